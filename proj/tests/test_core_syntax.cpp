// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include <vector>

#include "doctest.h"
#include "hybrid/expr.hpp"

using namespace hybrid;

namespace {

Expr B(std::uint32_t j) { return Expr::bnd(j); }
Expr V(std::uint32_t n) { return Expr::var(n); }
Expr A(const Expr& l, const Expr& r) { return Expr::app(l, r); }
Expr L(const Expr& b) { return Expr::abs(b); }
Expr C(const char* n) { return Expr::con(ConstId::intern("test", n)); }

// Reference versions written directly from the recursive definitions.
bool ref_level(std::uint32_t i, const Expr& e) {
    switch (e.kind()) {
        case ExprKind::bnd:
            return e.index() < i;
        case ExprKind::app:
            return ref_level(i, e.left()) && ref_level(i, e.right());
        case ExprKind::abs:
            return ref_level(i + 1, e.body());
        default:
            return true;
    }
}

Expr ref_lbind(std::uint32_t i, std::uint32_t depth, const Expr& e) {
    switch (e.kind()) {
        case ExprKind::bnd:
            return e.index() == depth ? B(i + depth) : e;
        case ExprKind::app:
            return A(ref_lbind(i, depth, e.left()), ref_lbind(i, depth, e.right()));
        case ExprKind::abs:
            return L(ref_lbind(i, depth + 1, e.body()));
        default:
            return e;
    }
}

Expr ref_inst(std::uint32_t depth, const Expr& e, const Expr& arg) {
    switch (e.kind()) {
        case ExprKind::bnd:
            return e.index() == depth ? arg : e;
        case ExprKind::app:
            return A(ref_inst(depth, e.left(), arg), ref_inst(depth, e.right(), arg));
        case ExprKind::abs:
            return L(ref_inst(depth + 1, e.body(), arg));
        default:
            return e;
    }
}

// Every expression up to `n` nodes over a tiny alphabet.
std::vector<Expr> enumerate(std::size_t n) {
    std::vector<std::vector<Expr>> by_size(n + 1);
    by_size[1] = {C("c"), V(0), V(1), B(0), B(1), B(2)};
    for (std::size_t s = 2; s <= n; ++s) {
        for (const auto& b : by_size[s - 1]) by_size[s].push_back(L(b));
        for (std::size_t k = 1; k + 1 < s; ++k)
            for (const auto& l : by_size[k])
                for (const auto& r : by_size[s - 1 - k]) by_size[s].push_back(A(l, r));
    }
    std::vector<Expr> all;
    for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
    return all;
}

}  // namespace

TEST_CASE("size counts constructors") {
    CHECK(size(L(A(B(0), B(1)))) == 4);
    CHECK(size(V(3)) == 1);
    CHECK(size(A(C("c"), L(B(0)))) == 4);
}

TEST_CASE("level and proper") {
    CHECK(level(1, B(0)));
    CHECK_FALSE(level(0, B(0)));
    CHECK(level(0, L(B(0))));
    CHECK_FALSE(level(1, L(B(2))));
    CHECK(proper(L(A(B(0), V(7)))));
    CHECK_FALSE(proper(L(B(1))));
}

TEST_CASE("abstr accepts only the hole as a dangling index") {
    CHECK(abstr(Abstraction{B(0)}));
    CHECK(abstr(Abstraction{L(B(1))}));
    CHECK_FALSE(abstr(Abstraction{B(1)}));
    CHECK(abstr(Abstraction{C("c")}));
}

TEST_CASE("lbind examples") {
    CHECK(lbind(2, Abstraction{B(0)}) == B(2));
    CHECK(lbind(1, Abstraction{L(B(1))}) == L(B(2)));
    CHECK(lbind(0, Abstraction{L(A(B(0), B(1)))}) == L(A(B(0), B(1))));
    CHECK_THROWS_AS(lbind(0, Abstraction{B(3)}), invalid_abstraction);
}

TEST_CASE("lambda wraps the body") {
    CHECK(lambda(Abstraction{A(B(0), V(1))}) == L(A(B(0), V(1))));
    CHECK(lambda(Abstraction{L(A(B(0), B(1)))}) == L(L(A(B(0), B(1)))));
}

TEST_CASE("instantiate examples") {
    CHECK(instantiate(Abstraction{L(A(B(0), B(1)))}, V(2)) == L(A(B(0), V(2))));
    CHECK(instantiate(Abstraction{B(0)}, C("c")) == C("c"));
    CHECK(instantiate(Abstraction{C("d")}, V(0)) == C("d"));
    CHECK_THROWS_AS(instantiate(Abstraction{B(0)}, B(0)), non_proper_argument);
}

TEST_CASE("match_abstraction examples") {
    auto m = match_abstraction(L(L(A(B(1), B(0)))));
    REQUIRE(m);
    CHECK(m->body == L(A(B(1), B(0))));
    CHECK_FALSE(match_abstraction(V(0)));
    CHECK_FALSE(match_abstraction(L(B(1))));
}

TEST_CASE("const_abstraction") {
    Abstraction a = const_abstraction(A(V(0), C("c")));
    CHECK(instantiate(a, V(5)) == A(V(0), C("c")));
    CHECK_THROWS_AS(const_abstraction(B(0)), non_proper_argument);
}

TEST_CASE("abstract_var turns a free variable into the hole") {
    Abstraction a = abstract_var(L(A(B(0), V(1))), 1);
    CHECK(a.body == L(A(B(0), B(1))));
    CHECK(instantiate(a, V(1)) == L(A(B(0), V(1))));
}

TEST_CASE("to_string rendering") { CHECK(to_string(L(A(B(0), V(3)))) == "ABS(APP(BND 0, VAR 3))"); }

TEST_CASE("level agrees with the recursive definition and is monotone") {
    for (const auto& e : enumerate(5))
        for (std::uint32_t i = 0; i < 4; ++i) {
            CHECK(level(i, e) == ref_level(i, e));
            if (level(i, e)) CHECK(level(i + 1, e));
        }
}

TEST_CASE("lbind, lambda and instantiate against reference definitions") {
    for (const auto& e : enumerate(5)) {
        Abstraction a{e};
        if (!abstr(a)) continue;
        for (std::uint32_t i = 0; i < 3; ++i) {
            Expr l = lbind(i, a);
            CHECK(l == ref_lbind(i, 0, e));
            CHECK(level(i + 1, l));
            CHECK(size(l) == size(instantiate(a, V(0))));
        }
        CHECK(lambda(a) == L(lbind(0, a)));
        CHECK(instantiate(a, V(1)) == ref_inst(0, e, V(1)));
        // the lambda of an abstraction is proper and matches back
        auto m = match_abstraction(lambda(a));
        REQUIRE(m);
        CHECK(*m == a);
    }
}

TEST_CASE("lambda is injective on small abstractions") {
    std::vector<Abstraction> abs;
    for (const auto& e : enumerate(5))
        if (abstr(Abstraction{e})) abs.push_back(Abstraction{e});
    REQUIRE(abs.size() > 100);
    for (std::size_t i = 0; i < abs.size(); i += 3)
        for (std::size_t j = 0; j < abs.size(); j += 7)
            CHECK((lambda(abs[i]) == lambda(abs[j])) == (abs[i] == abs[j]));
}

TEST_CASE("instantiating an abstracted variable restores the term") {
    for (const auto& e : enumerate(5)) {
        if (!proper(e)) continue;
        CHECK(instantiate(abstract_var(e, 0), V(0)) == e);
        CHECK(instantiate(const_abstraction(e), V(1)) == e);
    }
}

TEST_CASE("structural equality and hashing are consistent") {
    Expr a = L(A(B(0), V(2)));
    Expr b = L(A(B(0), V(2)));
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    CHECK(a != L(A(B(0), V(1))));
}
