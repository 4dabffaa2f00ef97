// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "doctest.h"
#include "hybrid/contmach.hpp"
#include "hybrid/sl_olli.hpp"
#include "test_util.hpp"

using namespace hybrid;
using namespace hybrid::testing;

namespace {

Expr arrow(const Expr& a, const Expr& b) { return type_arrow(a, b); }
const Expr i = type_base();

SearchConfig bounded(std::uint32_t b, std::size_t max = 1) {
    SearchConfig c;
    c.bound = b;
    c.max_solutions = max;
    return c;
}

}  // namespace

TEST_CASE("machine steps") {
    Expr v = term("fun x. x");
    auto a = machine_step(Run{{}, instr_return(v)});
    REQUIRE(a);
    CHECK(*a == MachineState{Answer{v}});

    Expr e1 = term("fun x. x"), e2 = term("fun y. y");
    Expr app = term("(fun x. x) @ (fun y. y)");
    auto s = machine_step(Run{{}, instr_ev(app)});
    REQUIRE(s);
    Cont k{Abstraction{instr_app1(Expr::bnd(0), e2)}};
    CHECK(*s == MachineState{Run{k, instr_ev(e1)}});

    CHECK_FALSE(machine_step(Answer{v}));
    CHECK_FALSE(machine_step(Run{{}, instr_app1(v, v)}) == std::optional<MachineState>(Answer{v}));
}

TEST_CASE("function and fixed point steps") {
    Expr f = term("fun x. x");
    CHECK(*machine_step(Run{{}, instr_ev(f)}) == MachineState{Run{{}, instr_return(f)}});
    Expr fx = term("fix x. x");
    CHECK(*machine_step(Run{{}, instr_ev(fx)}) == MachineState{Run{{}, instr_ev(fx)}});
    // return into a frame fills the hole
    Cont k{Abstraction{instr_app1(Expr::bnd(0), f)}};
    CHECK(*machine_step(Run{k, instr_return(f)}) == MachineState{Run{{}, instr_app1(f, f)}});
    // app1 substitutes the unevaluated argument
    Expr arg = term("(fun a. a) @ (fun b. b)");
    CHECK(*machine_step(Run{{}, instr_app1(term("fun x. x"), arg)}) == MachineState{Run{{}, instr_ev(arg)}});
}

TEST_CASE("machine runs") {
    CHECK(machine_run(term("fun x. x"), 100) == term("fun x. x"));
    CHECK(machine_run(term("(fun x. fun y. x) @ ((fun z. z) @ (fun w. w))"), 100) ==
          term("fun y. (fun z. z) @ (fun w. w)"));
    auto d = machine_run_detailed(term("fix x. x"), 100);
    CHECK(d.status == MachineOutcome::Status::out_of_fuel);
    CHECK_FALSE(d.value);
    std::vector<MachineState> trace;
    machine_run(term("(fun x. x) @ (fun y. y)"), 100, &trace);
    REQUIRE(trace.size() >= 2);
    CHECK(trace.front() == MachineState{Run{{}, instr_ev(term("(fun x. x) @ (fun y. y)"))}});
    CHECK(std::holds_alternative<Answer>(trace.back()));
}

TEST_CASE("machine steps are deterministic along generated runs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::vector<MachineState> trace;
        machine_run(gen_closed_term(seed, 10), 200, &trace);
        for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
            auto n = machine_step(trace[k]);
            REQUIRE(n);
            CHECK(*n == trace[k + 1]);
        }
    }
}

TEST_CASE("typing oracle") {
    CHECK(typecheck_cont({}, {}, arrow(i, i)));
    CHECK(typecheck_cont({}, {}, arrow(arrow(i, i), arrow(i, i))));
    CHECK_FALSE(typecheck_cont({}, {}, arrow(i, arrow(i, i))));
    CHECK(typecheck_state(Run{{}, instr_return(term("fun x. x"))}, arrow(i, i)));
    CHECK_FALSE(typecheck_state(Run{{}, instr_return(term("fun x. x"))}, i));
    CHECK_FALSE(typecheck_expr({}, Expr::var(0), i));
    CHECK(typecheck_expr({{0, i}}, Expr::var(0), i));
    CHECK(typecheck_instr({}, instr_app1(term("fun x. x"), term("fun y. y")), arrow(i, i)));
    CHECK(ground_principal_type(term("fun x. fun y. x @ y")) == arrow(arrow(i, i), arrow(i, i)));
    CHECK_FALSE(ground_principal_type(term("fun x. x @ x")));
}

TEST_CASE("fifteen clauses") {
    const auto& cs = db_contmach().clauses;
    REQUIRE(cs.size() == 15);
    const ClauseOlli* ce = nullptr;
    const ClauseOlli* app = nullptr;
    for (const auto& c : cs) {
        if (c.name == "ceval") ce = &c;
        if (c.name == "exec_app") app = &c;
    }
    REQUIRE(ce);
    REQUIRE(ce->ordered.size() == 1);
    CHECK(ce->intuit.empty());
    CHECK(ce->ordered[0] == Goal::ord_imp(init_atom(UTerm::mv(1)), Goal::at(exec_atom(instr_ev(UTerm::mv(0))))));
    REQUIRE(app);
    REQUIRE(app->ordered.size() == 1);
    CHECK(app->ordered[0].kind() == GoalKind::ord_imp);
    CHECK(app->ordered[0].atom() == cont_atom(UTerm::abs(instr_app1(UTerm::bnd(0), UTerm::mv(1)))));
}

TEST_CASE("subject reduction on the machine") {
    auto id = sr_check_instance_cm(term("fun x. x"), arrow(i, i), 80);
    CHECK(id.status == CMReport::Status::preserved);
    CHECK(id.value == term("fun x. x"));
    auto k = sr_check_instance_cm(term("fun x. fun y. x @ y"), arrow(arrow(i, i), arrow(i, i)), 80);
    CHECK(k.status == CMReport::Status::preserved);
    CHECK(sr_check_instance_cm(term("fun x. x @ x"), i, 80).status == CMReport::Status::precondition);
    auto app = sr_check_instance_cm(term("(fun x. x) @ (fun y. y)"), arrow(i, i), 80);
    CHECK(app.status == CMReport::Status::preserved);
    CHECK(app.states > 2);
}

TEST_CASE("machine answers correspond to ceval proofs") {
    const char* progs[] = {"fun x. x", "(fun x. x) @ (fun y. y)", "(fun x. fun y. x) @ (fun z. z)",
                           "(fun f. f @ (fun a. a)) @ (fun g. g)"};
    for (const char* p : progs) {
        CAPTURE(p);
        Expr e = term(p);
        auto v = machine_run(e, 200);
        REQUIRE(v);
        MetaStore s;
        MetaId m = s.fresh_meta(0);
        auto r = solutions_olli(db_contmach(), {}, {}, Goal::at(ceval_atom(e, UTerm::mv(m))), s, bounded(60, 2));
        REQUIRE(r.proved());
        for (const auto& sol : r.solutions) {
            CHECK(sol.metas[m] == *v);
            CHECK(check_olli(db_contmach(), sol.derivation));
        }
    }
}

TEST_CASE("state rendering") {
    Expr f = term("fun x. x");
    CHECK(show_state(Answer{f}) == "answer (fun x0. x0)");
    std::string s = show_state(Run{{Abstraction{instr_app1(Expr::bnd(0), f)}}, instr_ev(f)});
    CHECK(s.rfind("init ; ", 0) == 0);
    CHECK(s.find(" <> ev ") != std::string::npos);
    CHECK(show_instr(instr_return(f)) == "return (fun x0. x0)");
}
