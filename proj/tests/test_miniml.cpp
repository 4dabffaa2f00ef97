// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "doctest.h"
#include "hybrid/miniml.hpp"
#include "hybrid/sl_hh.hpp"
#include "test_util.hpp"

using namespace hybrid;
using namespace hybrid::testing;

namespace {

Expr arrow(const Expr& a, const Expr& b) { return type_arrow(a, b); }

SearchConfig bounded(std::uint32_t b, std::size_t max = 1) {
    SearchConfig c;
    c.bound = b;
    c.max_solutions = max;
    return c;
}

const ClauseHH& clause(const std::string& name) {
    for (const auto& c : db_miniml().clauses)
        if (c.name == name) return c;
    FAIL("no clause " << name);
    throw 0;
}

}  // namespace

TEST_CASE("nine clauses in declaration order") {
    const auto& cs = db_miniml().clauses;
    REQUIRE(cs.size() == 9);
    const char* names[] = {"is_app", "is_fun", "is_fix", "ev_app", "ev_fun", "ev_fix", "tp_app", "tp_fun", "tp_fix"};
    for (std::size_t k = 0; k < 9; ++k) CHECK(cs[k].name == names[k]);
    db_miniml().validate();
}

TEST_CASE("binder typing is hypothetical") {
    const ClauseHH& c = clause("tp_fun");
    REQUIRE(c.body.kind() == GoalKind::all);
    const Goal& imp = c.body.body();
    REQUIRE(imp.kind() == GoalKind::imp);
    CHECK(imp.atom().pred == miniml_preds().hastype);
    CHECK(imp.atom().args[0] == UTerm::bnd(0));
    REQUIRE(imp.body().kind() == GoalKind::atom);
    CHECK(imp.body().atom().args[0] == UTerm::mapp(0, UTerm::bnd(0)));
    CHECK(c.vars[0].arity == 1);
}

TEST_CASE("evaluating a function checks it is a term") {
    const ClauseHH& c = clause("ev_fun");
    REQUIRE(c.body.kind() == GoalKind::atom);
    CHECK(c.body.atom() == isterm_atom(ml_fun(UTerm::mapp(0, UTerm::bnd(0)))));
    const ClauseHH& w = clause("is_fun");
    CHECK(w.body.kind() == GoalKind::all);
}

TEST_CASE("evaluator examples") {
    CHECK(meta_eval(term("fun x. x")) == term("fun x. x"));
    CHECK(meta_eval(term("(fun x. x) @ (fun y. y)")) == term("fun y. y"));
    CHECK(meta_eval(term("fix x. fun y. x @ y")) == term("fun y. (fix x. fun y. x @ y) @ y"));
    auto d = meta_eval_detailed(term("fix x. x"), 50);
    CHECK(d.status == EvalOutcome::Status::out_of_fuel);
    CHECK_FALSE(d.value);
    auto st = meta_eval_detailed(term("(fix x. x) @ (fun y. y)"), 50);
    CHECK_FALSE(st.value);
}

TEST_CASE("evaluator input checks") {
    CHECK_THROWS_AS(meta_eval(Expr::abs(Expr::bnd(1))), non_proper_argument);
    CHECK_THROWS_AS(meta_eval(Expr::var(0)), std::invalid_argument);
}

TEST_CASE("strict evaluation also proves well-formedness") {
    auto r = meta_eval_detailed(term("(fun x. x) @ (fun y. y)"), 100, true);
    REQUIRE(r.value);
    CHECK(*r.value == term("fun y. y"));
}

TEST_CASE("shape inspection") {
    Expr a = Expr::var(9), b = Expr::var(9);
    CHECK(ml_shape(term("fun x. x"), &a, nullptr) == MLShape::fun);
    CHECK(a == Expr::bnd(0));
    CHECK(ml_shape(term("(fun x. x) @ (fun y. y)"), &a, &b) == MLShape::app);
    CHECK(ml_shape(Expr::var(0), &a, &b) == MLShape::other);
}

TEST_CASE("subject reduction examples") {
    auto id = sr_check_instance(term("fun x. x"), 60);
    CHECK(id.status == SRReport::Status::preserved);
    REQUIRE(!id.types.empty());
    CHECK(id.types[0] == arrow(type_base(), type_base()));
    CHECK(id.value == term("fun x. x"));
    auto k = sr_check_instance(term("fun x. fun y. x @ y"), 60);
    CHECK(k.status == SRReport::Status::preserved);
    CHECK(k.types[0] == arrow(arrow(type_base(), type_base()), arrow(type_base(), type_base())));
    CHECK(sr_check_instance(Expr::var(0), 60).status == SRReport::Status::precondition);
    auto app = sr_check_instance(term("(fun x. x) @ (fun y. y)"), 60);
    CHECK(app.status == SRReport::Status::preserved);
}

TEST_CASE("generated terms are deterministic, proper and decodable") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Expr e = gen_closed_term(seed, 4 + seed % 20);
        CHECK(e == gen_closed_term(seed, 4 + seed % 20));
        CHECK(proper(e));
        CHECK(decode(miniml_signature(), {}, e));
        CHECK(show_term(e));
    }
}

TEST_CASE("evaluation is deterministic and agrees with proofs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Expr e = gen_closed_term(seed, 3 + seed % 10);
        auto v = meta_eval(e, 500);
        CHECK(v == meta_eval(e, 500));
        if (!v) continue;
        MetaStore s;
        MetaId m = s.fresh_meta(0);
        auto r = solutions_hh(db_miniml(), {}, Goal::at(eval_atom(e, UTerm::mv(m))), s, bounded(40, 3));
        if (r.outcome == Outcome::exhausted && !r.proved()) continue;
        REQUIRE(r.proved());
        for (const auto& sol : r.solutions) CHECK(sol.metas[m] == *v);
        // evaluation proofs imply well-formedness of both sides
        CHECK(prove_hh(db_miniml(), {}, 40, Goal::at(isterm_atom(e)), s).proved());
        CHECK(prove_hh(db_miniml(), {}, 40, Goal::at(isterm_atom(*v)), s).proved());
    }
}

TEST_CASE("arguments in checked derivations are proper") {
    MetaStore s;
    MetaId t = s.fresh_meta(0);
    auto r = prove_hh(db_miniml(), {}, 12, Goal::at(hastype_atom(term("(fun x. x) @ (fun y. y)"), UTerm::mv(t))), s);
    REQUIRE(r.proved());
    for_each_node(r.solutions[0].derivation, [](const Derivation& n) {
        if (n.goal.kind() == GoalKind::atom)
            for (const auto& a : n.goal.atom().args) CHECK(proper(a.expr()));
    });
}

TEST_CASE("surface rendering") {
    CHECK(show_term(term("fun x. x")) == "fun x0. x0");
    NamedTerm n = parse_term(miniml_signature(), "fun f. f @ f");
    NameHints h;
    collect_name_hints(miniml_signature(), {}, n, h);
    CHECK(show_term(encode(miniml_signature(), {}, n), &h) == "fun f. f @ f");
    CHECK_FALSE(show_term(Expr::abs(Expr::bnd(0))));
}
