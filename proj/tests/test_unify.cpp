// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include <vector>

#include "doctest.h"
#include "hybrid/formula.hpp"
#include "hybrid/unify.hpp"

using namespace hybrid;

namespace {

UTerm C(const char* n) { return UTerm::con(ConstId::intern("test", n)); }
Expr CE(const char* n) { return Expr::con(ConstId::intern("test", n)); }

std::vector<Expr> bodies(std::size_t n) {
    std::vector<std::vector<Expr>> by(n + 1);
    by[1] = {CE("c"), CE("d"), Expr::bnd(0), Expr::var(0)};
    for (std::size_t s = 2; s <= n; ++s) {
        for (const auto& b : by[s - 1]) by[s].push_back(Expr::abs(b));
        for (std::size_t k = 1; k + 1 < s; ++k)
            for (const auto& l : by[k])
                for (const auto& r : by[s - 1 - k]) by[s].push_back(Expr::app(l, r));
    }
    std::vector<Expr> out;
    for (auto& v : by)
        for (auto& e : v)
            if (abstr(Abstraction{e})) out.push_back(e);
    return out;
}

}  // namespace

TEST_CASE("fresh_meta ids and watermarks") {
    MetaStore s;
    CHECK(s.fresh_meta(0) == 0);
    CHECK(s.info(0).watermark == 0);
    CHECK(s.fresh_eigen() == Expr::var(0));
    MetaId m = s.fresh_meta(1);
    CHECK(m == 1);
    CHECK(s.info(m).watermark == 1);
    CHECK(s.info(m).arity == 1);
}

TEST_CASE("fresh_eigen counts up") {
    MetaStore s;
    s.reserve_eigen(5);
    CHECK(s.fresh_eigen() == Expr::var(5));
    CHECK(s.fresh_eigen() == Expr::var(6));
}

TEST_CASE("unify binds a term meta") {
    MetaStore s;
    MetaId m = s.fresh_meta(0);
    CHECK(unify(UTerm::mv(m), C("c"), s) == UnifyStatus::ok);
    CHECK(resolve(UTerm::mv(m), s) == C("c"));
}

TEST_CASE("unify pattern case binds an abstraction meta") {
    MetaStore s;
    MetaId e = s.fresh_meta(1);
    UTerm lhs = UTerm::abs(UTerm::mapp(e, UTerm::bnd(0)));
    Expr rhs = Expr::abs(Expr::app(Expr::bnd(0), Expr::bnd(0)));
    REQUIRE(unify(lhs, rhs, s) == UnifyStatus::ok);
    CHECK(*s.info(e).binding == UTerm(Expr::app(Expr::bnd(0), Expr::bnd(0))));
    CHECK(resolve(lhs, s) == UTerm(rhs));
    CHECK(instantiate(Abstraction{s.info(e).binding->expr()}, Expr::var(3)) ==
          Expr::app(Expr::var(3), Expr::var(3)));
}

TEST_CASE("scope violation for young eigenvariables") {
    MetaStore s;
    MetaId m = s.fresh_meta(0);
    Expr x = s.fresh_eigen();
    CHECK(unify(UTerm::mv(m), x, s) == UnifyStatus::scope);
    CHECK_FALSE(s.info(m).binding);
    MetaId n = s.fresh_meta(0);
    CHECK(unify(UTerm::mv(n), x, s) == UnifyStatus::ok);
}

TEST_CASE("clash and occurs check leave the store unchanged") {
    MetaStore s;
    MetaId m = s.fresh_meta(0);
    CHECK(unify(C("c"), C("d"), s) == UnifyStatus::clash);
    CHECK(unify(UTerm::mv(m), UTerm::app(C("f"), UTerm::mv(m)), s) == UnifyStatus::occurs);
    CHECK_FALSE(s.info(m).binding);
    MetaId k = s.fresh_meta(0);
    CHECK(unify(UTerm::app(UTerm::mv(k), C("c")), UTerm::app(C("d"), C("e")), s) == UnifyStatus::clash);
    CHECK_FALSE(s.info(k).binding);
}

TEST_CASE("non-pattern applications are rejected") {
    MetaStore s;
    MetaId e = s.fresh_meta(1);
    CHECK_THROWS_AS(unify(UTerm::mapp(e, C("c")), C("d"), s), non_pattern_error);
    CHECK_FALSE(s.info(e).binding);
}

TEST_CASE("bound abstraction metas are instantiated before unifying") {
    MetaStore s;
    MetaId e = s.fresh_meta(1);
    s.bind(e, UTerm::app(C("f"), UTerm::bnd(0)));
    CHECK(unify(UTerm::mapp(e, C("c")), UTerm::app(C("f"), C("c")), s) == UnifyStatus::ok);
    CHECK(unify(UTerm::mapp(e, C("c")), UTerm::app(C("f"), C("d")), s) == UnifyStatus::clash);
}

TEST_CASE("resolve") {
    MetaStore s;
    MetaId a = s.fresh_meta(0), b = s.fresh_meta(0);
    CHECK(resolve(C("c"), s) == C("c"));
    REQUIRE(unify(UTerm::mv(a), UTerm::app(C("f"), UTerm::mv(b)), s) == UnifyStatus::ok);
    REQUIRE(unify(UTerm::mv(b), C("c"), s) == UnifyStatus::ok);
    UTerm r = resolve(UTerm::mv(a), s);
    CHECK(r == UTerm::app(C("f"), C("c")));
    CHECK(resolve(r, s) == r);
}

TEST_CASE("undo restores bindings and counters") {
    MetaStore s;
    MetaId a = s.fresh_meta(0);
    auto mk = s.mark();
    REQUIRE(unify(UTerm::mv(a), C("c"), s) == UnifyStatus::ok);
    s.fresh_eigen();
    s.fresh_meta(1);
    s.undo(mk);
    CHECK_FALSE(s.info(a).binding);
    CHECK(s.eigen_counter() == 0);
    CHECK(s.size() == 1);
}

TEST_CASE("freshen_clause") {
    ClauseHH plain{"p", {}, Atom{ConstId::intern("test", "p"), {C("c")}}, Goal::tt()};
    MetaStore s;
    ClauseHH f = freshen_clause(plain, s);
    CHECK(f.head == plain.head);
    CHECK(s.size() == 0);

    ClauseHH c{"q",
               {{"E", 1}, {"X", 0}},
               Atom{ConstId::intern("test", "q"), {UTerm::abs(UTerm::mapp(0, UTerm::bnd(0))), UTerm::mv(1)}},
               Goal::at(Atom{ConstId::intern("test", "r"), {UTerm::mv(1), UTerm::mv(1)}})};
    s.fresh_meta(0);
    std::vector<MetaId> ids;
    ClauseHH g = freshen_clause(c, s, &ids);
    REQUIRE(ids.size() == 2);
    CHECK(s.info(ids[0]).arity == 1);
    CHECK(s.info(ids[1]).arity == 0);
    CHECK(g.head.args[0] == UTerm::abs(UTerm::mapp(ids[0], UTerm::bnd(0))));
    CHECK(g.body.atom().args[0] == UTerm::mv(ids[1]));
    CHECK(g.body.atom().args[1] == UTerm::mv(ids[1]));
}

TEST_CASE("pattern unification agrees with brute force over small bodies") {
    // E is old (created before eigenvariable VAR 0) or young; old metas may not capture VAR 0
    auto bs = bodies(5);
    REQUIRE(bs.size() > 50);
    for (bool old : {false, true})
        for (const auto& target : bs) {
            Expr rhs = Expr::abs(target);
            bool brute = false;
            for (const auto& b : bs)
                if (Expr::abs(b) == rhs && (!old || b.var_limit() == 0)) brute = true;
            MetaStore s;
            MetaId e = 0;
            if (old) {
                e = s.fresh_meta(1);
                s.reserve_eigen(1);
            } else {
                s.reserve_eigen(1);
                e = s.fresh_meta(1);
            }
            auto st = unify(UTerm::abs(UTerm::mapp(e, UTerm::bnd(0))), rhs, s);
            CHECK((st == UnifyStatus::ok) == brute);
            if (st == UnifyStatus::ok) {
                CHECK(abstr(Abstraction{s.info(e).binding->expr()}));
                CHECK(resolve(UTerm::abs(UTerm::mapp(e, UTerm::bnd(0))), s) == UTerm(rhs));
            } else {
                CHECK(st == UnifyStatus::scope);
                CHECK_FALSE(s.info(e).binding);
            }
        }
}

TEST_CASE("unifiers make both sides equal") {
    auto bs = bodies(4);
    for (std::size_t i = 0; i < bs.size(); i += 5) {
        MetaStore s;
        s.reserve_eigen(1);
        MetaId m = s.fresh_meta(0);
        UTerm lhs = UTerm::app(UTerm::mv(m), C("c"));
        if (!proper(bs[i])) continue;
        UTerm rhs = UTerm::app(bs[i], C("c"));
        REQUIRE(unify(lhs, rhs, s) == UnifyStatus::ok);
        CHECK(resolve(lhs, s) == resolve(rhs, s));
    }
}
