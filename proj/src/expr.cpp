// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/expr.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace hybrid {
namespace {

struct ConstRegistry {
    std::shared_mutex mu;
    // deque keeps element addresses stable for the returned references.
    std::deque<std::pair<std::string, std::string>> entries;
    std::map<std::pair<std::string, std::string>, std::uint32_t> index;
};

ConstRegistry& registry() {
    static ConstRegistry r;
    return r;
}

}  // namespace

ConstId ConstId::intern(const std::string& ol_tag, const std::string& name) {
    auto& r = registry();
    auto key = std::make_pair(ol_tag, name);
    {
        std::shared_lock lock(r.mu);
        auto it = r.index.find(key);
        if (it != r.index.end()) return ConstId(it->second);
    }
    std::unique_lock lock(r.mu);
    auto it = r.index.find(key);
    if (it != r.index.end()) return ConstId(it->second);
    auto id = static_cast<std::uint32_t>(r.entries.size());
    r.entries.push_back(key);
    r.index.emplace(key, id);
    return ConstId(id);
}

ConstId ConstId::from_raw(std::uint32_t raw) {
    auto& r = registry();
    std::shared_lock lock(r.mu);
    if (raw >= r.entries.size()) throw std::out_of_range("unknown constant id");
    return ConstId(raw);
}

const std::string& ConstId::ol_tag() const {
    auto& r = registry();
    std::shared_lock lock(r.mu);
    if (r.entries.empty()) throw std::logic_error("ConstId used before any constant was interned");
    return r.entries.at(raw_).first;
}

const std::string& ConstId::name() const {
    auto& r = registry();
    std::shared_lock lock(r.mu);
    if (r.entries.empty()) throw std::logic_error("ConstId used before any constant was interned");
    return r.entries.at(raw_).second;
}

Expr Expr::con(ConstId c) { return Expr(detail::make_con(c.raw())); }
Expr Expr::var(std::uint32_t n) { return Expr(detail::make_var(n)); }
Expr Expr::bnd(std::uint32_t j) { return Expr(detail::make_bnd(j)); }
Expr Expr::app(const Expr& l, const Expr& r) { return Expr(detail::make_app(l.node_, r.node_)); }
Expr Expr::abs(const Expr& body) { return Expr(detail::make_abs(body.node_)); }

Expr Expr::from_node(detail::NodePtr n) {
    if (!n || n->has_meta) throw std::invalid_argument("term contains metavariables");
    return Expr(std::move(n));
}

ConstId Expr::con_id() const {
    if (!is(ExprKind::con)) throw std::logic_error("not a constant");
    return ConstId::from_raw(node_->value);
}

std::uint32_t Expr::index() const {
    if (!is(ExprKind::var) && !is(ExprKind::bnd)) throw std::logic_error("not a variable");
    return node_->value;
}

Expr Expr::left() const {
    if (!is(ExprKind::app)) throw std::logic_error("not an application");
    return Expr(node_->left);
}

Expr Expr::right() const {
    if (!is(ExprKind::app)) throw std::logic_error("not an application");
    return Expr(node_->right);
}

Expr Expr::body() const {
    if (!is(ExprKind::abs)) throw std::logic_error("not an abstraction");
    return Expr(node_->left);
}

std::size_t size(const Expr& e) { return e.node()->size; }

bool level(std::uint32_t i, const Expr& e) { return e.loose() <= i; }

bool proper(const Expr& e) { return level(0, e); }

bool abstr(const Abstraction& a) { return level(1, a.body); }

Expr lambda(const Abstraction& a) { return Expr::abs(a.body); }

Expr lbind(std::uint32_t i, const Abstraction& a) {
    if (!abstr(a)) throw invalid_abstraction("lbind: body has dangling indices beyond the hole");
    return Expr::from_node(detail::renumber_hole(a.body.node(), i));
}

std::optional<Abstraction> match_abstraction(const Expr& e) {
    if (!e.is(ExprKind::abs) || !proper(e)) return std::nullopt;
    return Abstraction{e.body()};
}

Expr instantiate(const Abstraction& a, const Expr& arg) {
    if (!abstr(a)) throw invalid_abstraction("instantiate: not an abstraction");
    if (!proper(arg)) throw non_proper_argument("instantiate: argument has dangling indices");
    return subst(a.body, 0, arg);
}

Abstraction const_abstraction(const Expr& t) {
    if (!proper(t)) throw non_proper_argument("const_abstraction: term is not proper");
    return Abstraction{t};
}

Abstraction abstract_var(const Expr& t, std::uint32_t n) {
    if (!proper(t)) throw non_proper_argument("abstract_var: term is not proper");
    return Abstraction{Expr::from_node(detail::abstract_var(t.node(), n, 0))};
}

Expr subst(const Expr& body, std::uint32_t level, const Expr& arg) {
    return Expr::from_node(detail::subst(body.node(), level, arg.node()));
}

std::string to_string(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::con:
            return "CON " + e.con_id().name();
        case ExprKind::var:
            return "VAR " + std::to_string(e.index());
        case ExprKind::bnd:
            return "BND " + std::to_string(e.index());
        case ExprKind::app:
            return "APP(" + to_string(e.left()) + ", " + to_string(e.right()) + ")";
        case ExprKind::abs:
            return "ABS(" + to_string(e.body()) + ")";
    }
    return {};
}

}  // namespace hybrid
