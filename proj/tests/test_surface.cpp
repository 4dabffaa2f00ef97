// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.


#include "doctest.h"
#include "hybrid/miniml.hpp"
#include "hybrid/surface.hpp"

using namespace hybrid;

namespace {

const OLSignature& sig() { return miniml_signature(); }
NamedTerm P(const std::string& s) { return parse_term(sig(), s); }
Expr B(std::uint32_t j) { return Expr::bnd(j); }
Expr A(const Expr& l, const Expr& r) { return Expr::app(l, r); }
Expr L(const Expr& b) { return Expr::abs(b); }
Expr cabs() { return Expr::con(miniml_consts().cABS); }
Expr capp() { return Expr::con(miniml_consts().cAPP); }
Expr cfix() { return Expr::con(miniml_consts().cFIX); }

}  // namespace

TEST_CASE("encode examples") {
    CHECK(encode(sig(), {"x"}, P("x")) == Expr::var(0));
    CHECK(encode(sig(), {}, P("fix x. fun y. x @ y")) ==
          A(cfix(), L(A(cabs(), L(A(A(capp(), B(1)), B(0)))))));
    CHECK(encode(sig(), {}, P("fun x. fun y. x @ y")) ==
          A(cabs(), L(A(cabs(), L(A(A(capp(), B(1)), B(0)))))));
    CHECK(encode(sig(), {"a", "b"}, P("b @ a")) == A(A(capp(), Expr::var(1)), Expr::var(0)));
}

TEST_CASE("encode rejects unbound names") { CHECK_THROWS_AS(encode(sig(), {"x"}, P("y")), unbound_name); }

TEST_CASE("decode examples") {
    auto d = decode(sig(), {"x"}, Expr::var(0));
    REQUIRE(d);
    CHECK(*d == NamedTerm::var("x"));
    CHECK_FALSE(decode(sig(), {}, A(L(B(0)), Expr::var(0))));
    Expr fix = encode(sig(), {}, P("fix x. fun y. x @ y"));
    auto f = decode(sig(), {}, fix);
    REQUIRE(f);
    CHECK(print_term(sig(), *f) == "fix x0. fun x1. x0 @ x1");
    CHECK(*f == P("fix x0. fun x1. x0 @ x1"));
}

TEST_CASE("decode avoids context names") {
    auto d = decode(sig(), {"x0"}, encode(sig(), {"x0"}, P("fun y. y @ x0")));
    REQUIRE(d);
    CHECK(alpha_equal(*d, P("fun y. y @ x0")));
    CHECK(print_term(sig(), *d) != "fun x0. x0 @ x0");
}

TEST_CASE("decode uses name hints") {
    NamedTerm t = P("fun f. fun z. f @ z");
    NameHints h;
    collect_name_hints(sig(), {}, t, h);
    auto d = decode(sig(), {}, encode(sig(), {}, t), &h);
    REQUIRE(d);
    CHECK(*d == t);
}

TEST_CASE("decode is undefined outside the encodable fragment") {
    CHECK_FALSE(decode(sig(), {}, L(B(0))));
    CHECK_FALSE(decode(sig(), {}, A(cabs(), Expr::var(0))));
    CHECK_FALSE(decode(sig(), {}, Expr::var(0)));
    CHECK_FALSE(decode(sig(), {}, A(cabs(), L(B(1)))));
}

TEST_CASE("subst_named examples") {
    CHECK(subst_named(P("x"), "x", P("fun y. y")) == P("fun y. y"));
    CHECK(subst_named(P("fun y. x @ y"), "x", P("y")) == P("fun y0. y @ y0"));
    CHECK(subst_named(P("fun y. y"), "x", P("z")) == P("fun y. y"));
    CHECK(subst_named(P("fun x. x"), "x", P("z")) == P("fun x. x"));
}

TEST_CASE("parser precedence and printing") {
    CHECK(P("a @ b @ c") == P("(a @ b) @ c"));
    CHECK(P("fun x. x @ x") == P("fun x. (x @ x)"));
    CHECK(print_term(sig(), P("(fun x. x) @ (a @ b)")) == "(fun x. x) @ (a @ b)");
    CHECK_THROWS_AS(P("fun . x"), parse_error);
    CHECK_THROWS_AS(P("(a @ b"), parse_error);
}

TEST_CASE("types parse and print") {
    Expr t = parse_type("(i -> i) -> i -> i");
    CHECK(t == type_arrow(type_arrow(type_base(), type_base()), type_arrow(type_base(), type_base())));
    CHECK(print_type(t) == "(i -> i) -> i -> i");
    CHECK_FALSE(print_type(Expr::var(0)));
}

TEST_CASE("pure lambda signature encodes bare binders") {
    Expr e = encode(pure_lambda_signature(), {"c0"}, parse_term(pure_lambda_signature(), "lam x. x @ c0"));
    CHECK(e == L(A(B(0), Expr::var(0))));
}

TEST_CASE("round trips on generated terms") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        NamedTerm t = gen_closed_named(seed, 3 + seed % 20);
        Expr e = encode(sig(), {}, t);
        CHECK(proper(e));
        auto d = decode(sig(), {}, e);
        REQUIRE(d);
        CHECK(alpha_equal(*d, t));
        CHECK(encode(sig(), {}, *d) == e);
    }
}

TEST_CASE("encoding commutes with substitution") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        NamedTerm s = gen_closed_named(seed * 2 + 1, 2 + seed % 6);
        // body with a free w: wrap generated terms around occurrences of w
        NamedTerm base = gen_closed_named(seed * 2, 3 + seed % 10);
        NamedTerm body = NamedTerm::app2(miniml_consts().cAPP, base, NamedTerm::var("w"));
        if (seed % 3 == 0) body = NamedTerm::binder(miniml_consts().cABS, "w", body);  // w shadowed
        Expr lhs = encode(sig(), {}, subst_named(body, "w", s));
        Abstraction a = abstract_var(encode(sig(), {"w"}, body), 0);
        Expr rhs = instantiate(a, encode(sig(), {}, s));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("alpha equality ignores binder names only") {
    CHECK(alpha_equal(P("fun x. x"), P("fun y. y")));
    CHECK_FALSE(alpha_equal(P("fun x. fun y. x"), P("fun x. fun y. y")));
    CHECK(alpha_equal(P("fun x. fun x. x"), P("fun y. fun z. z")));
}

TEST_CASE("free names") {
    auto f = free_names(P("fun x. x @ y @ z"));
    CHECK(f.size() == 2);
}

TEST_CASE("alpha-equivalent binders keep their own names") {
    NamedTerm t = P("(fun x. x) @ ((fun z. z) @ (fun w. w))");
    NameHints h;
    collect_name_hints(sig(), {}, t, h);
    auto whole = decode(sig(), {}, encode(sig(), {}, t), &h);
    REQUIRE(whole);
    CHECK(*whole == t);
    // a single copy takes the most recent name
    auto one = decode(sig(), {}, encode(sig(), {}, P("fun q. q")), &h);
    REQUIRE(one);
    CHECK(*one == P("fun w. w"));
    auto two = decode(sig(), {}, encode(sig(), {}, P("(fun a. a) @ (fun b. b)")), &h);
    REQUIRE(two);
    CHECK(*two == P("(fun z. z) @ (fun w. w)"));
}
