// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/surface.hpp"

#include <algorithm>
#include <set>

namespace hybrid {

NamedTerm NamedTerm::var(std::string name) {
    NamedTerm t;
    t.kind = Kind::var;
    t.name = std::move(name);
    return t;
}

NamedTerm NamedTerm::binder(ConstId op, std::string bound, NamedTerm body) {
    NamedTerm t;
    t.kind = Kind::binder;
    t.op = op;
    t.name = std::move(bound);
    t.left = std::make_shared<const NamedTerm>(std::move(body));
    return t;
}

NamedTerm NamedTerm::app2(ConstId op, NamedTerm l, NamedTerm r) {
    NamedTerm t;
    t.kind = Kind::app2;
    t.op = op;
    t.left = std::make_shared<const NamedTerm>(std::move(l));
    t.right = std::make_shared<const NamedTerm>(std::move(r));
    return t;
}

NamedTerm NamedTerm::constant(ConstId op) {
    NamedTerm t;
    t.kind = Kind::constant;
    t.op = op;
    return t;
}

bool operator==(const NamedTerm& a, const NamedTerm& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NamedTerm::Kind::var:
            return a.name == b.name;
        case NamedTerm::Kind::constant:
            return a.op == b.op;
        case NamedTerm::Kind::binder:
            return a.op == b.op && a.name == b.name && *a.left == *b.left;
        case NamedTerm::Kind::app2:
            return a.op == b.op && *a.left == *b.left && *a.right == *b.right;
    }
    return false;
}

void OLSignature::add(ConstId c, Arity arity, std::string keyword, bool raw) {
    entries_[c] = Entry{arity, std::move(keyword), raw};
}

const OLSignature::Entry* OLSignature::find(ConstId c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<ConstId> OLSignature::by_keyword(const std::string& kw) const {
    for (const auto& [c, e] : entries_)
        if (e.keyword == kw) return c;
    return std::nullopt;
}

std::optional<ConstId> OLSignature::binary() const {
    for (const auto& [c, e] : entries_)
        if (e.arity == Arity::binary) return c;
    return std::nullopt;
}

const MiniMLConsts& miniml_consts() {
    static const MiniMLConsts k{ConstId::intern("miniml", "cABS"), ConstId::intern("miniml", "cAPP"),
                                ConstId::intern("miniml", "cFIX")};
    return k;
}

const OLSignature& miniml_signature() {
    static const OLSignature sig = [] {
        OLSignature s;
        const auto& k = miniml_consts();
        s.add(k.cABS, Arity::binder, "fun");
        s.add(k.cFIX, Arity::binder, "fix");
        s.add(k.cAPP, Arity::binary, "@");
        return s;
    }();
    return sig;
}

const OLSignature& pure_lambda_signature() {
    static const OLSignature sig = [] {
        OLSignature s;
        s.add(ConstId::intern("lambda", "lam"), Arity::binder, "lam", true);
        s.add(ConstId::intern("lambda", "app"), Arity::binary, "@", true);
        return s;
    }();
    return sig;
}

namespace {

const OLSignature::Entry& entry_for(const OLSignature& sig, ConstId op, Arity want) {
    const auto* e = sig.find(op);
    if (!e) throw signature_mismatch("constant " + op.name() + " is not in the signature");
    if (e->arity != want) throw signature_mismatch("constant " + op.name() + " used with the wrong arity");
    return *e;
}

Expr encode_in(const OLSignature& sig, VarContext& ctx, const NamedTerm& t) {
    switch (t.kind) {
        case NamedTerm::Kind::var: {
            for (std::size_t i = ctx.size(); i-- > 0;)
                if (ctx[i] == t.name) return Expr::var(static_cast<std::uint32_t>(i));
            throw unbound_name("unbound name '" + t.name + "'");
        }
        case NamedTerm::Kind::constant:
            entry_for(sig, t.op, Arity::nullary);
            return Expr::con(t.op);
        case NamedTerm::Kind::app2: {
            const auto& e = entry_for(sig, t.op, Arity::binary);
            Expr l = encode_in(sig, ctx, *t.left);
            Expr r = encode_in(sig, ctx, *t.right);
            if (e.raw) return Expr::app(l, r);
            return Expr::app(Expr::app(Expr::con(t.op), l), r);
        }
        case NamedTerm::Kind::binder: {
            const auto& e = entry_for(sig, t.op, Arity::binder);
            auto n = static_cast<std::uint32_t>(ctx.size());
            ctx.push_back(t.name);
            Expr body = encode_in(sig, ctx, t.body());
            ctx.pop_back();
            Expr lam = lambda(abstract_var(body, n));
            if (e.raw) return lam;
            return Expr::app(Expr::con(t.op), lam);
        }
    }
    throw std::logic_error("bad named term");
}

struct Decoder {
    const OLSignature& sig;
    const NameHints* hints;
    VarContext scope;
    // Copies of each hinted binder: total (from a counting pass) and seen so far.
    std::unordered_map<Expr, std::pair<std::size_t, std::size_t>> uses;
    bool counting = false;

    std::string fresh_name(const Expr& binder_term) {
        auto in_scope = [&](const std::string& n) {
            return std::find(scope.begin(), scope.end(), n) != scope.end();
        };
        if (hints) {
            auto it = hints->find(binder_term);
            if (it != hints->end() && !it->second.empty()) {
                auto& [total, seen] = uses[binder_term];
                if (counting) {
                    ++total;
                } else {
                    const auto& names = it->second;
                    std::size_t j = seen++;
                    std::size_t pick = total <= names.size() ? names.size() - total + j : j % names.size();
                    if (!in_scope(names[pick])) return names[pick];
                }
            }
        }
        for (std::size_t k = 0;; ++k) {
            std::string n = "x" + std::to_string(k);
            if (!in_scope(n)) return n;
        }
    }

    std::optional<NamedTerm> binder(ConstId op, const Expr& whole, const Expr& abs) {
        std::string name = fresh_name(whole);
        auto n = static_cast<std::uint32_t>(scope.size());
        Expr body = instantiate(Abstraction{abs.body()}, Expr::var(n));
        scope.push_back(name);
        auto b = run(body);
        scope.pop_back();
        if (!b) return std::nullopt;
        return NamedTerm::binder(op, name, std::move(*b));
    }

    std::optional<NamedTerm> run(const Expr& e) {
        switch (e.kind()) {
            case ExprKind::var:
                if (e.index() < scope.size()) return NamedTerm::var(scope[e.index()]);
                return std::nullopt;
            case ExprKind::bnd:
                return std::nullopt;
            case ExprKind::con: {
                const auto* en = sig.find(e.con_id());
                if (en && en->arity == Arity::nullary && !en->raw) return NamedTerm::constant(e.con_id());
                return std::nullopt;
            }
            case ExprKind::abs:
                for (const auto& [c, en] : sig.entries())
                    if (en.raw && en.arity == Arity::binder) return binder(c, e, e);
                return std::nullopt;
            case ExprKind::app:
                break;
        }
        Expr l = e.left(), r = e.right();
        if (l.is(ExprKind::con) && r.is(ExprKind::abs)) {
            const auto* en = sig.find(l.con_id());
            if (en && en->arity == Arity::binder && !en->raw) return binder(l.con_id(), e, r);
        }
        if (l.is(ExprKind::app) && l.left().is(ExprKind::con)) {
            const auto* en = sig.find(l.left().con_id());
            if (en && en->arity == Arity::binary && !en->raw) {
                auto a = run(l.right());
                if (!a) return std::nullopt;
                auto b = run(r);
                if (!b) return std::nullopt;
                return NamedTerm::app2(l.left().con_id(), std::move(*a), std::move(*b));
            }
        }
        for (const auto& [c, en] : sig.entries()) {
            if (en.raw && en.arity == Arity::binary) {
                auto a = run(l);
                if (!a) return std::nullopt;
                auto b = run(r);
                if (!b) return std::nullopt;
                return NamedTerm::app2(c, std::move(*a), std::move(*b));
            }
        }
        return std::nullopt;
    }
};

void collect_in(const OLSignature& sig, VarContext& ctx, const NamedTerm& t, NameHints& out) {
    switch (t.kind) {
        case NamedTerm::Kind::var:
        case NamedTerm::Kind::constant:
            return;
        case NamedTerm::Kind::app2:
            collect_in(sig, ctx, *t.left, out);
            collect_in(sig, ctx, *t.right, out);
            return;
        case NamedTerm::Kind::binder:
            out[encode_in(sig, ctx, t)].push_back(t.name);
            ctx.push_back(t.name);
            collect_in(sig, ctx, t.body(), out);
            ctx.pop_back();
            return;
    }
}

void free_in(const NamedTerm& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind) {
        case NamedTerm::Kind::var:
            if (std::find(bound.begin(), bound.end(), t.name) == bound.end()) out.insert(t.name);
            return;
        case NamedTerm::Kind::constant:
            return;
        case NamedTerm::Kind::app2:
            free_in(*t.left, bound, out);
            free_in(*t.right, bound, out);
            return;
        case NamedTerm::Kind::binder:
            bound.push_back(t.name);
            free_in(t.body(), bound, out);
            bound.pop_back();
            return;
    }
}

std::set<std::string> free_set(const NamedTerm& t) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    free_in(t, bound, out);
    return out;
}

bool alpha_in(const NamedTerm& a, const NamedTerm& b, std::vector<std::string>& ea,
              std::vector<std::string>& eb) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NamedTerm::Kind::var: {
            auto ia = std::find(ea.rbegin(), ea.rend(), a.name);
            auto ib = std::find(eb.rbegin(), eb.rend(), b.name);
            bool fa = ia != ea.rend(), fb = ib != eb.rend();
            if (fa != fb) return false;
            if (!fa) return a.name == b.name;
            return (ia - ea.rbegin()) == (ib - eb.rbegin());
        }
        case NamedTerm::Kind::constant:
            return a.op == b.op;
        case NamedTerm::Kind::app2:
            return a.op == b.op && alpha_in(*a.left, *b.left, ea, eb) &&
                   alpha_in(*a.right, *b.right, ea, eb);
        case NamedTerm::Kind::binder: {
            if (a.op != b.op) return false;
            ea.push_back(a.name);
            eb.push_back(b.name);
            bool r = alpha_in(a.body(), b.body(), ea, eb);
            ea.pop_back();
            eb.pop_back();
            return r;
        }
    }
    return false;
}

}  // namespace

Expr encode(const OLSignature& sig, const VarContext& ctx, const NamedTerm& t) {
    VarContext work = ctx;
    return encode_in(sig, work, t);
}

std::optional<NamedTerm> decode(const OLSignature& sig, const VarContext& ctx, const Expr& e,
                                const NameHints* hints) {
    if (!proper(e)) return std::nullopt;
    Decoder d{sig, hints, ctx, {}, false};
    if (hints && !hints->empty()) {
        d.counting = true;
        if (!d.run(e)) return std::nullopt;
        d.counting = false;
        d.scope = ctx;
    }
    return d.run(e);
}

void collect_name_hints(const OLSignature& sig, const VarContext& ctx, const NamedTerm& t,
                        NameHints& out) {
    VarContext work = ctx;
    collect_in(sig, work, t, out);
}

std::vector<std::string> free_names(const NamedTerm& t) {
    auto s = free_set(t);
    return {s.begin(), s.end()};
}

NamedTerm subst_named(const NamedTerm& t, const std::string& x, const NamedTerm& s) {
    switch (t.kind) {
        case NamedTerm::Kind::var:
            return t.name == x ? s : t;
        case NamedTerm::Kind::constant:
            return t;
        case NamedTerm::Kind::app2:
            return NamedTerm::app2(t.op, subst_named(*t.left, x, s), subst_named(*t.right, x, s));
        case NamedTerm::Kind::binder: {
            if (t.name == x) return t;
            auto fv_body = free_set(t.body());
            if (!fv_body.count(x)) return t;
            auto fv_s = free_set(s);
            if (!fv_s.count(t.name))
                return NamedTerm::binder(t.op, t.name, subst_named(t.body(), x, s));
            std::string fresh;
            for (std::size_t k = 0;; ++k) {
                fresh = t.name + std::to_string(k);
                if (fresh != x && !fv_s.count(fresh) && !fv_body.count(fresh)) break;
            }
            NamedTerm renamed = subst_named(t.body(), t.name, NamedTerm::var(fresh));
            return NamedTerm::binder(t.op, fresh, subst_named(renamed, x, s));
        }
    }
    return t;
}

bool alpha_equal(const NamedTerm& a, const NamedTerm& b) {
    std::vector<std::string> ea, eb;
    return alpha_in(a, b, ea, eb);
}

namespace detail {
namespace {

bool is_binder_kw(const OLSignature& sig, TokenStream& ts) {
    if (ts.peek().kind != Token::Kind::ident) return false;
    auto c = sig.by_keyword(ts.peek().text);
    return c && sig.find(*c)->arity == Arity::binder;
}

NamedTerm parse_primary(const OLSignature& sig, TokenStream& ts) {
    if (ts.accept("(")) {
        NamedTerm t = parse_term(sig, ts);
        ts.expect(")");
        return t;
    }
    if (ts.peek().kind != Token::Kind::ident) ts.fail("expected a term");
    if (is_binder_kw(sig, ts)) ts.fail("binder needs parentheses here");
    std::string name = ts.next().text;
    if (auto c = sig.by_keyword(name); c && sig.find(*c)->arity == Arity::nullary)
        return NamedTerm::constant(*c);
    return NamedTerm::var(name);
}

}  // namespace

NamedTerm parse_term(const OLSignature& sig, TokenStream& ts) {
    if (is_binder_kw(sig, ts)) {
        ConstId op = *sig.by_keyword(ts.next().text);
        std::string x = ts.expect_ident();
        if (sig.by_keyword(x)) ts.fail("keyword used as a bound name");
        ts.expect(".");
        return NamedTerm::binder(op, x, parse_term(sig, ts));
    }
    NamedTerm t = parse_primary(sig, ts);
    auto app = sig.binary();
    while (app && ts.at(sig.find(*app)->keyword)) {
        ts.next();
        if (is_binder_kw(sig, ts)) return NamedTerm::app2(*app, t, parse_term(sig, ts));
        t = NamedTerm::app2(*app, t, parse_primary(sig, ts));
    }
    return t;
}

}  // namespace detail

NamedTerm parse_term(const OLSignature& sig, const std::string& text) {
    detail::TokenStream ts(text);
    NamedTerm t = detail::parse_term(sig, ts);
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    return t;
}

std::string print_term(const OLSignature& sig, const NamedTerm& t) {
    auto kw = [&](ConstId c) {
        const auto* e = sig.find(c);
        return e ? e->keyword : c.name();
    };
    switch (t.kind) {
        case NamedTerm::Kind::var:
            return t.name;
        case NamedTerm::Kind::constant:
            return kw(t.op);
        case NamedTerm::Kind::binder:
            return kw(t.op) + " " + t.name + ". " + print_term(sig, t.body());
        case NamedTerm::Kind::app2: {
            std::string l = print_term(sig, *t.left);
            std::string r = print_term(sig, *t.right);
            if (t.left->kind == NamedTerm::Kind::binder) l = "(" + l + ")";
            if (t.right->kind == NamedTerm::Kind::binder || t.right->kind == NamedTerm::Kind::app2)
                r = "(" + r + ")";
            return l + " " + kw(t.op) + " " + r;
        }
    }
    return {};
}

const TypeConsts& type_consts() {
    static const TypeConsts k{ConstId::intern("tp", "i"), ConstId::intern("tp", "arrow")};
    return k;
}

Expr type_base() { return Expr::con(type_consts().base); }

Expr type_arrow(const Expr& a, const Expr& b) {
    return Expr::app(Expr::app(Expr::con(type_consts().arrow), a), b);
}

namespace {

Expr parse_ty(detail::TokenStream& ts) {
    Expr lhs = [&] {
        if (ts.accept("(")) {
            Expr t = parse_ty(ts);
            ts.expect(")");
            return t;
        }
        if (!ts.accept("i")) ts.fail("expected a type");
        return type_base();
    }();
    if (ts.accept("->")) return type_arrow(lhs, parse_ty(ts));
    return lhs;
}

}  // namespace

Expr parse_type(const std::string& text) {
    detail::TokenStream ts(text);
    Expr t = parse_ty(ts);
    if (!ts.at_end()) ts.fail("unexpected trailing input");
    return t;
}

std::optional<std::string> print_type(const Expr& t) {
    const auto& k = type_consts();
    if (t.is(ExprKind::con) && t.con_id() == k.base) return "i";
    if (t.is(ExprKind::app) && t.left().is(ExprKind::app) && t.left().left().is(ExprKind::con) &&
        t.left().left().con_id() == k.arrow) {
        auto a = print_type(t.left().right());
        auto b = print_type(t.right());
        if (!a || !b) return std::nullopt;
        bool paren = t.left().right().is(ExprKind::app);
        return (paren ? "(" + *a + ")" : *a) + " -> " + *b;
    }
    return std::nullopt;
}

}  // namespace hybrid
