// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/miniml.hpp"

#include <random>

#include "hybrid/sl_hh.hpp"

namespace hybrid {

const MiniMLPreds& miniml_preds() {
    static const MiniMLPreds p{ConstId::intern("miniml", "isterm"), ConstId::intern("miniml", "eval"),
                               ConstId::intern("miniml", "hastype")};
    return p;
}

Atom isterm_atom(const UTerm& e) { return Atom{miniml_preds().isterm, {e}}; }
Atom eval_atom(const UTerm& e, const UTerm& v) { return Atom{miniml_preds().eval, {e, v}}; }
Atom hastype_atom(const UTerm& e, const UTerm& t) { return Atom{miniml_preds().hastype, {e, t}}; }

UTerm ml_app(const UTerm& a, const UTerm& b) {
    return UTerm::app(UTerm::app(UTerm::con(miniml_consts().cAPP), a), b);
}
UTerm ml_fun(const UTerm& body) { return UTerm::app(UTerm::con(miniml_consts().cABS), UTerm::abs(body)); }
UTerm ml_fix(const UTerm& body) { return UTerm::app(UTerm::con(miniml_consts().cFIX), UTerm::abs(body)); }

namespace {

UTerm mv(MetaId i) { return UTerm::mv(i); }
UTerm arrow(const UTerm& a, const UTerm& b) {
    return UTerm::app(UTerm::app(UTerm::con(type_consts().arrow), a), b);
}
// E x, with x the innermost `all` binder.
UTerm apply_bound(MetaId e) { return UTerm::mapp(e, UTerm::bnd(0)); }
// fun x. E x and fix x. E x
UTerm fun_of(MetaId e) { return ml_fun(UTerm::mapp(e, UTerm::bnd(0))); }
UTerm fix_of(MetaId e) { return ml_fix(UTerm::mapp(e, UTerm::bnd(0))); }

DatabaseHH build_db() {
    DatabaseHH db;
    db.name = "miniml";
    db.ground_default = type_base();
    using G = Goal;
    // isterm
    db.clauses.push_back({"is_app", {{"E1"}, {"E2"}}, isterm_atom(ml_app(mv(0), mv(1))),
                          G::conj(G::at(isterm_atom(mv(0))), G::at(isterm_atom(mv(1))))});
    db.clauses.push_back({"is_fun", {{"E", 1}}, isterm_atom(fun_of(0)),
                          G::all(G::imp(isterm_atom(UTerm::bnd(0)), G::at(isterm_atom(apply_bound(0)))))});
    db.clauses.push_back({"is_fix", {{"E", 1}}, isterm_atom(fix_of(0)),
                          G::all(G::imp(isterm_atom(UTerm::bnd(0)), G::at(isterm_atom(apply_bound(0)))))});
    // eval: E1 E2 E1' V2 V
    db.clauses.push_back(
        {"ev_app",
         {{"E1"}, {"E2"}, {"E1'", 1}, {"V2"}, {"V"}},
         eval_atom(ml_app(mv(0), mv(1)), mv(4)),
         G::conj(G::at(eval_atom(mv(0), fun_of(2))),
                 G::conj(G::at(eval_atom(mv(1), mv(3))), G::at(eval_atom(UTerm::mapp(2, mv(3)), mv(4)))))});
    db.clauses.push_back({"ev_fun", {{"E", 1}}, eval_atom(fun_of(0), fun_of(0)), G::at(isterm_atom(fun_of(0)))});
    db.clauses.push_back({"ev_fix", {{"E", 1}, {"V"}}, eval_atom(fix_of(0), mv(1)),
                          G::conj(G::at(eval_atom(UTerm::mapp(0, fix_of(0)), mv(1))), G::at(isterm_atom(fix_of(0))))});
    // hastype
    db.clauses.push_back({"tp_app", {{"E1"}, {"E2"}, {"T"}, {"T'"}}, hastype_atom(ml_app(mv(0), mv(1)), mv(2)),
                          G::conj(G::at(hastype_atom(mv(0), arrow(mv(3), mv(2)))), G::at(hastype_atom(mv(1), mv(3))))});
    db.clauses.push_back({"tp_fun", {{"E", 1}, {"T"}, {"T'"}}, hastype_atom(fun_of(0), arrow(mv(1), mv(2))),
                          G::all(G::imp(hastype_atom(UTerm::bnd(0), mv(1)), G::at(hastype_atom(apply_bound(0), mv(2)))))});
    db.clauses.push_back({"tp_fix", {{"E", 1}, {"T"}}, hastype_atom(fix_of(0), mv(1)),
                          G::all(G::imp(hastype_atom(UTerm::bnd(0), mv(1)), G::at(hastype_atom(apply_bound(0), mv(1)))))});
    db.validate();
    return db;
}

struct Evaluator {
    std::uint64_t fuel;
    std::uint64_t steps = 0;
    bool out = false;

    // nullopt: stuck or out of fuel (see `out`).
    std::optional<Expr> run(Expr e) {
        for (;;) {
            if (steps >= fuel) {
                out = true;
                return std::nullopt;
            }
            ++steps;
            Expr a = e, b = e;
            switch (ml_shape(e, &a, &b)) {
                case MLShape::fun:
                    return e;
                case MLShape::fix:
                    e = instantiate(Abstraction{a}, e);
                    continue;
                case MLShape::app: {
                    auto f = run(a);
                    if (!f) return std::nullopt;
                    Expr body = *f;
                    if (ml_shape(*f, &body, nullptr) != MLShape::fun) return std::nullopt;
                    auto v = run(b);
                    if (!v) return std::nullopt;
                    e = instantiate(Abstraction{body}, *v);
                    continue;
                }
                case MLShape::other:
                    return std::nullopt;
            }
        }
    }
};

}  // namespace

MLShape ml_shape(const Expr& e, Expr* a, Expr* b) {
    const auto& k = miniml_consts();
    if (!e.is(ExprKind::app)) return MLShape::other;
    Expr l = e.left(), r = e.right();
    if (l.is(ExprKind::con) && r.is(ExprKind::abs)) {
        if (l.con_id() != k.cABS && l.con_id() != k.cFIX) return MLShape::other;
        if (a) *a = r.body();
        return l.con_id() == k.cABS ? MLShape::fun : MLShape::fix;
    }
    if (l.is(ExprKind::app) && l.left().is(ExprKind::con) && l.left().con_id() == k.cAPP) {
        if (a) *a = l.right();
        if (b) *b = r;
        return MLShape::app;
    }
    return MLShape::other;
}

const DatabaseHH& db_miniml() {
    static const DatabaseHH db = build_db();
    return db;
}

EvalOutcome meta_eval_detailed(const Expr& e, std::uint64_t fuel, bool strict) {
    if (!proper(e)) throw non_proper_argument("meta_eval: term is not proper");
    if (!decode(miniml_signature(), {}, e)) throw std::invalid_argument("meta_eval: not a closed Mini-ML term");
    if (strict) {
        MetaStore store;
        auto bound = static_cast<std::uint32_t>(3 * size(e) + 1);
        auto r = prove_hh(db_miniml(), {}, bound, Goal::at(isterm_atom(e)), store);
        if (!r.proved()) throw std::invalid_argument("meta_eval: isterm does not hold");
    }
    Evaluator ev{fuel};
    EvalOutcome out;
    out.value = ev.run(e);
    out.steps = ev.steps;
    if (out.value)
        out.status = EvalOutcome::Status::value;
    else
        out.status = ev.out ? EvalOutcome::Status::out_of_fuel : EvalOutcome::Status::stuck;
    return out;
}

std::optional<Expr> meta_eval(const Expr& e, std::uint64_t fuel) { return meta_eval_detailed(e, fuel).value; }

const char* to_string(SRReport::Status s) {
    switch (s) {
        case SRReport::Status::preserved:
            return "preserved";
        case SRReport::Status::violated:
            return "violated";
        case SRReport::Status::inconclusive:
            return "inconclusive";
        case SRReport::Status::precondition:
            return "precondition";
    }
    return "?";
}

SRReport sr_check_instance(const Expr& e, std::uint32_t bound, std::size_t k, std::uint64_t fuel) {
    SRReport rep;
    if (!proper(e) || !decode(miniml_signature(), {}, e)) {
        rep.status = SRReport::Status::precondition;
        rep.detail = "not a closed Mini-ML term";
        return rep;
    }
    const DatabaseHH& db = db_miniml();
    MetaStore store;
    MetaId t = store.fresh_meta(0);
    SearchConfig cfg;
    cfg.bound = bound;
    cfg.max_solutions = k;
    auto types = solutions_hh(db, {}, Goal::at(hastype_atom(e, UTerm::mv(t))), store, cfg);
    if (types.outcome == Outcome::failed) {
        rep.status = SRReport::Status::precondition;
        rep.detail = "term is not typeable";
        return rep;
    }
    if (types.outcome == Outcome::exhausted) {
        rep.detail = "type search hit the bound";
        return rep;
    }
    for (const auto& s : types.solutions) rep.types.push_back(s.metas[t]);

    auto ev = meta_eval_detailed(e, fuel);
    if (ev.status == EvalOutcome::Status::out_of_fuel) {
        rep.detail = "evaluation ran out of fuel";
        return rep;
    }
    if (ev.status == EvalOutcome::Status::stuck) {
        rep.status = SRReport::Status::violated;
        rep.detail = "typeable term got stuck";
        return rep;
    }
    rep.value = ev.value;

    MetaStore vs;
    MetaId v = vs.fresh_meta(0);
    cfg.max_solutions = 1;
    auto sl = solutions_hh(db, {}, Goal::at(eval_atom(e, UTerm::mv(v))), vs, cfg);
    if (sl.outcome == Outcome::exhausted) {
        rep.detail = "evaluation search hit the bound";
        return rep;
    }
    if (!sl.proved() || sl.solutions[0].metas[v] != *ev.value) {
        rep.status = SRReport::Status::violated;
        rep.detail = "specification-level evaluation disagrees with the evaluator";
        return rep;
    }
    for (const auto& ty : rep.types) {
        MetaStore ts;
        auto r = solutions_hh(db, {}, Goal::at(hastype_atom(*ev.value, ty)), ts, cfg);
        if (r.outcome == Outcome::exhausted) {
            rep.detail = "value typing hit the bound";
            return rep;
        }
        if (!r.proved()) {
            rep.status = SRReport::Status::violated;
            rep.detail = "value does not have type " + print_type(ty).value_or("?");
            return rep;
        }
    }
    rep.status = SRReport::Status::preserved;
    return rep;
}

NamedTerm gen_closed_named(std::uint64_t seed, std::size_t size_budget) {
    std::mt19937_64 rng(seed);
    const auto& k = miniml_consts();
    std::vector<std::string> scope;
    // Weights: fun 3, app 3, fix 1, var 3 (var only inside a binder).
    auto gen = [&](auto& self, std::size_t budget) -> NamedTerm {
        bool can_var = !scope.empty();
        if (budget <= 1 && can_var) return NamedTerm::var(scope[rng() % scope.size()]);
        std::uint64_t total = budget >= 3 ? 7 : 4;
        if (can_var) total += 3;
        std::uint64_t r = rng() % total;
        if (budget >= 3) {
            if (r < 3) {
                std::size_t left = 1 + rng() % (budget - 2);
                NamedTerm a = self(self, left);
                NamedTerm b = self(self, budget - 1 - left);
                return NamedTerm::app2(k.cAPP, std::move(a), std::move(b));
            }
            r -= 3;
        }
        if (r < 4 || !can_var) {
            ConstId op = r < 3 ? k.cABS : k.cFIX;
            std::string x = "x" + std::to_string(scope.size());
            scope.push_back(x);
            NamedTerm body = self(self, budget > 1 ? budget - 1 : 1);
            scope.pop_back();
            return NamedTerm::binder(op, x, std::move(body));
        }
        return NamedTerm::var(scope[rng() % scope.size()]);
    };
    return gen(gen, size_budget < 2 ? 2 : size_budget);
}

Expr gen_closed_term(std::uint64_t seed, std::size_t size_budget) {
    return encode(miniml_signature(), {}, gen_closed_named(seed, size_budget));
}

std::optional<std::string> show_term(const Expr& e, const NameHints* hints) {
    auto n = decode(miniml_signature(), {}, e, hints);
    if (!n) return std::nullopt;
    return print_term(miniml_signature(), *n);
}

}  // namespace hybrid
