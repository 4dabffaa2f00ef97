// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "doctest.h"
#include "hybrid/contmach.hpp"
#include "hybrid/query.hpp"
#include "hybrid/suites.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace hybrid;
using namespace hybrid::testing;

namespace {

struct QRun {
    int rc;
    std::string out, err;
};

QRun run(const std::string& q, OLKind ol, SLKind sl, std::uint32_t bound, bool show_height = false, bool json = false) {
    QueryOptions o;
    o.ol = ol;
    o.sl = sl;
    o.cfg.bound = bound;
    o.show_height = show_height;
    o.json = json;
    std::ostringstream out, err;
    int rc = run_query(o, q, out, err);
    return {rc, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_query builds goals and metas") {
    MetaStore s;
    ParsedQuery p = parse_query(OLKind::miniml, "exists T. hastype(fun x. x, T)", s);
    CHECK(p.names == std::vector<std::string>{"T"});
    REQUIRE(p.metas.size() == 1);
    CHECK(p.sorts[0] == Sort::type);
    CHECK(p.goal == Goal::at(hastype_atom(term("fun x. x"), UTerm::mv(p.metas[0]))));

    ParsedQuery c = parse_query(OLKind::miniml, "isterm(fun x. x) and tt", s);
    CHECK(c.goal.kind() == GoalKind::conj);
    ParsedQuery a = parse_query(OLKind::miniml, "all x. isterm(x) imp isterm(x @ x)", s);
    CHECK(a.goal.kind() == GoalKind::all);
    CHECK(a.goal.body().kind() == GoalKind::imp);
}

TEST_CASE("parse errors") {
    MetaStore s;
    CHECK_THROWS_AS(parse_query(OLKind::miniml, "hastype(fun x. x", s), parse_error);
    CHECK_THROWS_AS(parse_query(OLKind::miniml, "hastype(y, T)", s), unbound_name);
    CHECK_THROWS(parse_query(OLKind::miniml, "ceval(fun x. x, fun x. x)", s));
}

TEST_CASE("contmach instructions and frames parse") {
    MetaStore s;
    ParsedQuery p = parse_query(OLKind::contmach, "exists T. ofI(app1 (fun x. x) (fun y. y), T)", s);
    CHECK(p.goal.atom().args[0] == UTerm(instr_app1(term("fun x. x"), term("fun y. y"))));
    ParsedQuery q = parse_query(OLKind::contmach, "cont(v. app1 v (fun y. y)) ->> tt", s);
    CHECK(q.goal.kind() == GoalKind::ord_imp);
    CHECK(q.goal.atom() == cont_atom(UTerm::abs(instr_app1(UTerm::bnd(0), term("fun y. y")))));
}

TEST_CASE("typing query prints the principal type") {
    QRun r = run("exists T. hastype(fun x. fun y. x @ y, T)", OLKind::miniml, SLKind::hh, 8);
    CHECK(r.rc == kExitSolved);
    CHECK(r.out == "T = (i -> i) -> i -> i\n");
}

TEST_CASE("ceval query prints the value and height") {
    QRun r = run("exists V. ceval(fun x. x, V)", OLKind::contmach, SLKind::olli, 20, true);
    CHECK(r.rc == kExitSolved);
    CHECK(r.out.rfind("V = fun x. x; height=", 0) == 0);
}

TEST_CASE("exit statuses") {
    CHECK(run("exists T. hastype(fun x. x, T)", OLKind::miniml, SLKind::hh, 1).rc == kExitExhausted);
    CHECK(run("hastype(fun x. x, i)", OLKind::miniml, SLKind::hh, 10).rc == kExitFailed);
    CHECK(run("hastype(fun x. x, i -> i)", OLKind::miniml, SLKind::hh, 10).out == "yes\n");
    CHECK(run("exists V. ceval(fun x. x, V)", OLKind::contmach, SLKind::hh, 20).rc == kExitUsage);
    CHECK(run("hastype(fun x. x", OLKind::miniml, SLKind::hh, 10).rc == kExitUsage);
}

TEST_CASE("exhausted and failed messages") {
    QRun e = run("exists T. hastype(fun x. x, T)", OLKind::miniml, SLKind::hh, 1);
    CHECK(e.out.find("exhausted") != std::string::npos);
    QRun f = run("hastype(fun x. x, i)", OLKind::miniml, SLKind::hh, 10);
    CHECK(f.out == "no\n");
}

TEST_CASE("miniml queries run under the ordered logic too") {
    QRun r = run("exists T. hastype(fun x. x, T)", OLKind::miniml, SLKind::olli, 20);
    CHECK(r.rc == kExitSolved);
    CHECK(r.out == "T = i -> i\n");
}

TEST_CASE("json output") {
    QRun r = run("exists V. eval((fun x. x) @ (fun y. y), V)", OLKind::miniml, SLKind::hh, 20, false, true);
    REQUIRE(r.rc == kExitSolved);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["solution"]["V"] == "fun y. y");
    CHECK(j["checked"] == true);
    CHECK(j["height"].get<int>() > 0);
}

TEST_CASE("output is reproducible") {
    QRun a = run("exists V. eval((fun x. x) @ (fun y. y), V)", OLKind::miniml, SLKind::hh, 20);
    QRun b = run("exists V. eval((fun x. x) @ (fun y. y), V)", OLKind::miniml, SLKind::hh, 20);
    CHECK(a.out == b.out);
}

TEST_CASE("suites run with small samples") {
    SuiteOptions o;
    o.samples = 20;
    for (const auto& name : {"abstraction", "adequacy", "structural-hh", "checker"}) {
        CAPTURE(name);
        SuiteReport r = run_named_suite(name, o);
        CHECK(r.ok());
        CHECK(r.run > 0);
    }
    CHECK_THROWS(run_named_suite("nonsense", o));
}

TEST_CASE("corpus files") {
    std::string path = "corpus_test.txt";
    {
        std::ofstream f(path);
        f << "# comment\nfun x. x\n\n(fun x. x) @ (fun y. y)\n";
    }
    auto c = load_corpus(path);
    REQUIRE(c.size() == 2);
    CHECK(c[1] == term("(fun x. x) @ (fun y. y)"));
    {
        std::ofstream f(path);
        f << "fun x. x\nfun . x\n";
    }
    CHECK_THROWS_AS(load_corpus(path), parse_error);
    std::remove(path.c_str());
}

TEST_CASE("default corpus is deterministic and duplicate free") {
    auto a = default_corpus(60, 3), b = default_corpus(60, 3);
    CHECK(a == b);
    std::unordered_set<Expr> seen(a.begin(), a.end());
    CHECK(seen.size() == a.size());
}
