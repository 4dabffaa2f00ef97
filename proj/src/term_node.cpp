// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/detail/term_node.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybrid::detail {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint32_t checked_add(std::uint32_t a, std::uint32_t b) {
    std::uint32_t r = a + b;
    if (r < a) throw std::overflow_error("de Bruijn index overflow");
    return r;
}

NodePtr leaf(NodeKind k, std::uint32_t v) {
    auto n = std::make_shared<TermNode>();
    n->kind = k;
    n->value = v;
    n->size = 1;
    n->loose = k == NodeKind::bnd ? checked_add(v, 1) : 0;
    n->var_limit = k == NodeKind::var ? checked_add(v, 1) : 0;
    n->has_meta = k == NodeKind::mv;
    n->hash = mix(static_cast<std::size_t>(k) * 31 + 7, v);
    return n;
}

}  // namespace

NodePtr make_con(std::uint32_t id) { return leaf(NodeKind::con, id); }
NodePtr make_var(std::uint32_t n) { return leaf(NodeKind::var, n); }
NodePtr make_bnd(std::uint32_t j) { return leaf(NodeKind::bnd, j); }
NodePtr make_mv(std::uint32_t id) { return leaf(NodeKind::mv, id); }

NodePtr make_app(NodePtr l, NodePtr r) {
    auto n = std::make_shared<TermNode>();
    n->kind = NodeKind::app;
    n->size = checked_add(checked_add(l->size, r->size), 1);
    n->loose = std::max(l->loose, r->loose);
    n->var_limit = std::max(l->var_limit, r->var_limit);
    n->has_meta = l->has_meta || r->has_meta;
    n->hash = mix(mix(101, l->hash), r->hash);
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

NodePtr make_abs(NodePtr body) {
    auto n = std::make_shared<TermNode>();
    n->kind = NodeKind::abs;
    n->size = checked_add(body->size, 1);
    n->loose = body->loose == 0 ? 0 : body->loose - 1;
    n->var_limit = body->var_limit;
    n->has_meta = body->has_meta;
    n->hash = mix(211, body->hash);
    n->left = std::move(body);
    return n;
}

NodePtr make_mapp(std::uint32_t id, NodePtr arg) {
    auto n = std::make_shared<TermNode>();
    n->kind = NodeKind::mapp;
    n->value = id;
    n->size = checked_add(arg->size, 1);
    n->loose = arg->loose;
    n->var_limit = arg->var_limit;
    n->has_meta = true;
    n->hash = mix(mix(307, id), arg->hash);
    n->left = std::move(arg);
    return n;
}

bool equal(const TermNode& a, const TermNode& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind || a.hash != b.hash || a.size != b.size || a.value != b.value)
        return false;
    switch (a.kind) {
        case NodeKind::app:
            return equal(*a.left, *b.left) && equal(*a.right, *b.right);
        case NodeKind::abs:
        case NodeKind::mapp:
            return equal(*a.left, *b.left);
        default:
            return true;
    }
}

NodePtr shift(const NodePtr& t, std::uint32_t by, std::uint32_t cutoff) {
    if (by == 0 || t->loose <= cutoff) return t;
    switch (t->kind) {
        case NodeKind::bnd:
            return make_bnd(checked_add(t->value, by));
        case NodeKind::app:
            return make_app(shift(t->left, by, cutoff), shift(t->right, by, cutoff));
        case NodeKind::abs:
            return make_abs(shift(t->left, by, cutoff + 1));
        case NodeKind::mapp:
            return make_mapp(t->value, shift(t->left, by, cutoff));
        default:
            return t;
    }
}

namespace {

NodePtr subst_at(const NodePtr& t, std::uint32_t target, const NodePtr& arg, std::uint32_t depth) {
    if (t->loose <= target) return t;
    switch (t->kind) {
        case NodeKind::bnd:
            if (t->value == target) return shift(arg, depth);
            return make_bnd(t->value - 1);
        case NodeKind::app:
            return make_app(subst_at(t->left, target, arg, depth),
                            subst_at(t->right, target, arg, depth));
        case NodeKind::abs:
            return make_abs(subst_at(t->left, target + 1, arg, depth + 1));
        case NodeKind::mapp:
            return make_mapp(t->value, subst_at(t->left, target, arg, depth));
        default:
            return t;
    }
}

NodePtr abstract_at(const NodePtr& t, std::uint32_t n, std::uint32_t target) {
    if (t->var_limit <= n && t->loose <= target) return t;
    switch (t->kind) {
        case NodeKind::var:
            return t->value == n ? make_bnd(target) : t;
        case NodeKind::bnd:
            return t->value >= target ? make_bnd(checked_add(t->value, 1)) : t;
        case NodeKind::app:
            return make_app(abstract_at(t->left, n, target), abstract_at(t->right, n, target));
        case NodeKind::abs:
            return make_abs(abstract_at(t->left, n, target + 1));
        case NodeKind::mapp:
            return make_mapp(t->value, abstract_at(t->left, n, target));
        default:
            return t;
    }
}

NodePtr renumber_at(const NodePtr& t, std::uint32_t i, std::uint32_t depth) {
    if (t->loose <= depth) return t;
    switch (t->kind) {
        case NodeKind::bnd:
            return t->value == depth ? make_bnd(checked_add(t->value, i)) : t;
        case NodeKind::app:
            return make_app(renumber_at(t->left, i, depth), renumber_at(t->right, i, depth));
        case NodeKind::abs:
            return make_abs(renumber_at(t->left, i, depth + 1));
        case NodeKind::mapp:
            return make_mapp(t->value, renumber_at(t->left, i, depth));
        default:
            return t;
    }
}

}  // namespace

NodePtr subst(const NodePtr& body, std::uint32_t level, const NodePtr& arg) {
    return subst_at(body, level, arg, 0);
}

NodePtr abstract_var(const NodePtr& t, std::uint32_t n, std::uint32_t level) {
    return abstract_at(t, n, level);
}

NodePtr renumber_hole(const NodePtr& body, std::uint32_t i) {
    if (i == 0) return body;
    return renumber_at(body, i, 0);
}

}  // namespace hybrid::detail
