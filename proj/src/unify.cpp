// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/unify.hpp"

#include <limits>

namespace hybrid {

namespace d = detail;

UTerm UTerm::con(ConstId c) { return UTerm(d::make_con(c.raw())); }
UTerm UTerm::var(std::uint32_t n) { return UTerm(d::make_var(n)); }
UTerm UTerm::bnd(std::uint32_t j) { return UTerm(d::make_bnd(j)); }
UTerm UTerm::app(const UTerm& l, const UTerm& r) { return UTerm(d::make_app(l.node_, r.node_)); }
UTerm UTerm::abs(const UTerm& body) { return UTerm(d::make_abs(body.node_)); }
UTerm UTerm::mv(MetaId m) { return UTerm(d::make_mv(m)); }
UTerm UTerm::mapp(MetaId m, const UTerm& arg) { return UTerm(d::make_mapp(m, arg.node_)); }

std::optional<Expr> UTerm::to_expr() const {
    if (node_->has_meta) return std::nullopt;
    return Expr::from_node(node_);
}

Expr UTerm::expr() const { return Expr::from_node(node_); }

UTerm subst(const UTerm& body, std::uint32_t level, const UTerm& arg) {
    return UTerm::from_node(d::subst(body.node(), level, arg.node()));
}

std::string to_string(const UTerm& t) {
    switch (t.kind()) {
        case NodeKind::con:
            return "CON " + ConstId::from_raw(t.value()).name();
        case NodeKind::var:
            return "VAR " + std::to_string(t.value());
        case NodeKind::bnd:
            return "BND " + std::to_string(t.value());
        case NodeKind::app:
            return "APP(" + to_string(t.left()) + ", " + to_string(t.right()) + ")";
        case NodeKind::abs:
            return "ABS(" + to_string(t.left()) + ")";
        case NodeKind::mv:
            return "?" + std::to_string(t.value());
        case NodeKind::mapp:
            return "?" + std::to_string(t.value()) + "(" + to_string(t.left()) + ")";
    }
    return {};
}

MetaId MetaStore::fresh_meta(std::uint8_t arity) {
    if (arity > 1) throw std::invalid_argument("metavariable arity must be 0 or 1");
    auto id = static_cast<MetaId>(metas_.size());
    metas_.push_back(MetaInfo{arity, eigen_, std::nullopt});
    trail_.push_back({Op::meta, id, 0});
    return id;
}

Expr MetaStore::fresh_eigen() {
    if (eigen_ == std::numeric_limits<std::uint32_t>::max())
        throw std::overflow_error("eigenvariable counter overflow");
    trail_.push_back({Op::eigen, 0, eigen_});
    return Expr::var(eigen_++);
}

void MetaStore::reserve_eigen(std::uint32_t n) {
    if (n <= eigen_) return;
    trail_.push_back({Op::eigen, 0, eigen_});
    eigen_ = n;
}

void MetaStore::bind(MetaId m, const UTerm& value) {
    auto& mi = metas_.at(m);
    if (mi.binding) throw std::logic_error("metavariable already bound");
    if (value.loose() > mi.arity) throw std::logic_error("binding has dangling indices");
    mi.binding = value;
    trail_.push_back({Op::bind, m, 0});
}

void MetaStore::lower_watermark(MetaId m, std::uint32_t w) {
    auto& mi = metas_.at(m);
    if (w >= mi.watermark) return;
    trail_.push_back({Op::watermark, m, mi.watermark});
    mi.watermark = w;
}

void MetaStore::undo(std::size_t mark) {
    while (trail_.size() > mark) {
        Entry e = trail_.back();
        trail_.pop_back();
        switch (e.op) {
            case Op::bind:
                metas_[e.id].binding.reset();
                break;
            case Op::watermark:
                metas_[e.id].watermark = e.old;
                break;
            case Op::meta:
                metas_.pop_back();
                break;
            case Op::eigen:
                eigen_ = e.old;
                break;
        }
    }
}

const char* to_string(UnifyStatus s) {
    switch (s) {
        case UnifyStatus::ok:
            return "ok";
        case UnifyStatus::clash:
            return "clash";
        case UnifyStatus::occurs:
            return "occurs";
        case UnifyStatus::scope:
            return "scope";
    }
    return "?";
}

UTerm shallow_resolve(const UTerm& t0, const MetaStore& store) {
    UTerm t = t0;
    for (;;) {
        if (t.is(NodeKind::mv)) {
            const auto& b = store.info(t.value()).binding;
            if (!b) return t;
            t = *b;
        } else if (t.is(NodeKind::mapp)) {
            const auto& b = store.info(t.value()).binding;
            if (!b) return t;
            t = subst(*b, 0, t.left());
        } else {
            return t;
        }
    }
}

UTerm resolve(const UTerm& t, const MetaStore& store) {
    if (t.ground()) return t;
    switch (t.kind()) {
        case NodeKind::app:
            return UTerm::app(resolve(t.left(), store), resolve(t.right(), store));
        case NodeKind::abs:
            return UTerm::abs(resolve(t.left(), store));
        case NodeKind::mv: {
            const auto& b = store.info(t.value()).binding;
            return b ? resolve(*b, store) : t;
        }
        case NodeKind::mapp: {
            UTerm arg = resolve(t.left(), store);
            const auto& b = store.info(t.value()).binding;
            if (!b) return UTerm::mapp(t.value(), arg);
            return resolve(subst(*b, 0, arg), store);
        }
        default:
            return t;
    }
}

namespace {

struct Unifier {
    MetaStore& store;

    // Walks a resolved term: fails on occurrences of m and on young eigenvariables,
    // and lowers watermarks of metas that end up inside m's binding.
    bool meta_check(const UTerm& t, MetaId m, std::uint32_t wm, UnifyStatus& why) {
        if (t.var_limit() > wm && !scan_vars(t, wm)) {
            why = UnifyStatus::scope;
            return false;
        }
        return scan_metas(t, m, wm, why);
    }

    static bool scan_vars(const UTerm& t, std::uint32_t wm) {
        if (t.var_limit() <= wm) return true;
        switch (t.kind()) {
            case NodeKind::var:
                return t.value() < wm;
            case NodeKind::app:
                return scan_vars(t.left(), wm) && scan_vars(t.right(), wm);
            case NodeKind::abs:
            case NodeKind::mapp:
                return scan_vars(t.left(), wm);
            default:
                return true;
        }
    }

    bool scan_metas(const UTerm& t, MetaId m, std::uint32_t wm, UnifyStatus& why) {
        if (t.ground()) return true;
        switch (t.kind()) {
            case NodeKind::mv:
                if (t.value() == m) {
                    why = UnifyStatus::occurs;
                    return false;
                }
                store.lower_watermark(t.value(), wm);
                return true;
            case NodeKind::mapp:
                if (t.value() == m) {
                    why = UnifyStatus::occurs;
                    return false;
                }
                store.lower_watermark(t.value(), wm);
                return scan_metas(t.left(), m, wm, why);
            case NodeKind::app:
                return scan_metas(t.left(), m, wm, why) && scan_metas(t.right(), m, wm, why);
            case NodeKind::abs:
                return scan_metas(t.left(), m, wm, why);
            default:
                return true;
        }
    }

    UnifyStatus bind_mv(MetaId m, const UTerm& t0) {
        UTerm t = resolve(t0, store);
        if (t.loose() > 0) return UnifyStatus::scope;
        UnifyStatus why = UnifyStatus::ok;
        if (!meta_check(t, m, store.info(m).watermark, why)) return why;
        store.bind(m, t);
        return UnifyStatus::ok;
    }

    // Rebuilds `t` as an abstraction body. hole_bnd: the outer bound index that becomes
    // the hole; hole_var: the eigenvariable that becomes the hole. Any other reference
    // to the local binders is a scope failure.
    std::optional<UTerm> abstract(const UTerm& t, std::uint32_t e, std::optional<std::uint32_t> hole_bnd,
                                  std::optional<std::uint32_t> hole_var) {
        switch (t.kind()) {
            case NodeKind::bnd: {
                std::uint32_t j = t.value();
                if (j < e) return t;
                if (hole_bnd && j - e == *hole_bnd) return UTerm::bnd(e);
                return std::nullopt;
            }
            case NodeKind::var:
                if (hole_var && t.value() == *hole_var) return UTerm::bnd(e);
                return t;
            case NodeKind::app: {
                auto l = abstract(t.left(), e, hole_bnd, hole_var);
                if (!l) return std::nullopt;
                auto r = abstract(t.right(), e, hole_bnd, hole_var);
                if (!r) return std::nullopt;
                return UTerm::app(*l, *r);
            }
            case NodeKind::abs: {
                auto b = abstract(t.left(), e + 1, hole_bnd, hole_var);
                if (!b) return std::nullopt;
                return UTerm::abs(*b);
            }
            case NodeKind::mapp: {
                auto a = abstract(t.left(), e, hole_bnd, hole_var);
                if (!a) return std::nullopt;
                return UTerm::mapp(t.value(), *a);
            }
            default:
                return t;
        }
    }

    UnifyStatus pattern(const UTerm& flex, const UTerm& other, std::uint32_t depth) {
        MetaId m = flex.value();
        std::uint32_t wm = store.info(m).watermark;
        UTerm arg = resolve(flex.left(), store);
        std::optional<std::uint32_t> hole_bnd, hole_var;
        if (arg.is(NodeKind::bnd) && arg.value() < depth) {
            hole_bnd = arg.value();
        } else if (arg.is(NodeKind::var) && arg.value() >= wm) {
            hole_var = arg.value();
        } else {
            throw non_pattern_error("metavariable ?" + std::to_string(m) +
                                    " applied to a non-variable argument " + to_string(arg));
        }
        UTerm t = resolve(other, store);
        auto body = abstract(t, 0, hole_bnd, hole_var);
        if (!body) return UnifyStatus::scope;
        UnifyStatus why = UnifyStatus::ok;
        if (!meta_check(*body, m, wm, why)) return why;
        store.bind(m, *body);
        return UnifyStatus::ok;
    }

    UnifyStatus rec(const UTerm& a0, const UTerm& b0, std::uint32_t depth) {
        UTerm a = shallow_resolve(a0, store);
        UTerm b = shallow_resolve(b0, store);
        if (a == b) return UnifyStatus::ok;
        if (a.is(NodeKind::mapp)) return pattern(a, b, depth);
        if (b.is(NodeKind::mapp)) return pattern(b, a, depth);
        if (a.is(NodeKind::mv)) return bind_mv(a.value(), b);
        if (b.is(NodeKind::mv)) return bind_mv(b.value(), a);
        if (a.kind() != b.kind()) return UnifyStatus::clash;
        switch (a.kind()) {
            case NodeKind::app: {
                auto s = rec(a.left(), b.left(), depth);
                if (s != UnifyStatus::ok) return s;
                return rec(a.right(), b.right(), depth);
            }
            case NodeKind::abs:
                return rec(a.left(), b.left(), depth + 1);
            default:
                // Leaves with equal kinds reached here differ in value.
                return UnifyStatus::clash;
        }
    }
};

UTerm map_metas(const UTerm& t, const std::vector<MetaId>* rename, const std::vector<UTerm>* values) {
    if (t.ground()) return t;
    switch (t.kind()) {
        case NodeKind::app:
            return UTerm::app(map_metas(t.left(), rename, values), map_metas(t.right(), rename, values));
        case NodeKind::abs:
            return UTerm::abs(map_metas(t.left(), rename, values));
        case NodeKind::mv:
            if (rename) return UTerm::mv(rename->at(t.value()));
            return values->at(t.value());
        case NodeKind::mapp: {
            UTerm arg = map_metas(t.left(), rename, values);
            if (rename) return UTerm::mapp(rename->at(t.value()), arg);
            return subst(values->at(t.value()), 0, arg);
        }
        default:
            return t;
    }
}

}  // namespace

UnifyStatus unify(const UTerm& a, const UTerm& b, MetaStore& store) {
    std::size_t mk = store.mark();
    Unifier u{store};
    try {
        UnifyStatus s = u.rec(a, b, 0);
        if (s != UnifyStatus::ok) store.undo(mk);
        return s;
    } catch (...) {
        store.undo(mk);
        throw;
    }
}

UTerm rename_metas(const UTerm& t, const std::vector<MetaId>& to) { return map_metas(t, &to, nullptr); }

UTerm apply_instantiation(const UTerm& t, const std::vector<UTerm>& values) {
    return map_metas(t, nullptr, &values);
}

}  // namespace hybrid
