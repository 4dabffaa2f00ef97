// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// de Bruijn expressions and one-hole abstractions.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "hybrid/detail/term_node.hpp"

namespace hybrid {

class invalid_abstraction : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class non_proper_argument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// Interned (object logic, name) pair. Two ConstIds are equal iff both parts are.
class ConstId {
   public:
    ConstId() = default;
    static ConstId intern(const std::string& ol_tag, const std::string& name);
    static ConstId from_raw(std::uint32_t raw);

    const std::string& ol_tag() const;
    const std::string& name() const;
    std::uint32_t raw() const { return raw_; }

    friend bool operator==(ConstId a, ConstId b) { return a.raw_ == b.raw_; }
    friend bool operator!=(ConstId a, ConstId b) { return a.raw_ != b.raw_; }
    friend bool operator<(ConstId a, ConstId b) { return a.raw_ < b.raw_; }

   private:
    explicit ConstId(std::uint32_t raw) : raw_(raw) {}
    std::uint32_t raw_ = 0;
};

enum class ExprKind : std::uint8_t { con, var, bnd, app, abs };

class Expr {
   public:
    static Expr con(ConstId c);
    static Expr var(std::uint32_t n);
    static Expr bnd(std::uint32_t j);
    static Expr app(const Expr& l, const Expr& r);
    static Expr abs(const Expr& body);
    // Wraps a meta-free node; throws std::invalid_argument otherwise.
    static Expr from_node(detail::NodePtr n);

    ExprKind kind() const { return static_cast<ExprKind>(node_->kind); }
    bool is(ExprKind k) const { return kind() == k; }
    ConstId con_id() const;
    std::uint32_t index() const;  // VAR or BND index
    Expr left() const;            // APP function
    Expr right() const;           // APP argument
    Expr body() const;            // ABS body

    // Smallest i with level(i, *this).
    std::uint32_t loose() const { return node_->loose; }
    std::uint32_t var_limit() const { return node_->var_limit; }
    std::size_t hash() const { return node_->hash; }
    const detail::NodePtr& node() const { return node_; }

    friend bool operator==(const Expr& a, const Expr& b) { return detail::equal(*a.node_, *b.node_); }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

   private:
    explicit Expr(detail::NodePtr n) : node_(std::move(n)) {}
    detail::NodePtr node_;
};

std::size_t size(const Expr& e);
bool level(std::uint32_t i, const Expr& e);
bool proper(const Expr& e);

// Body in which the hole is the dangling index equal to the ABS depth.
struct Abstraction {
    Expr body;
    friend bool operator==(const Abstraction& a, const Abstraction& b) { return a.body == b.body; }
    friend bool operator!=(const Abstraction& a, const Abstraction& b) { return !(a == b); }
};

bool abstr(const Abstraction& a);
Expr lambda(const Abstraction& a);
Expr lbind(std::uint32_t i, const Abstraction& a);
std::optional<Abstraction> match_abstraction(const Expr& e);
Expr instantiate(const Abstraction& a, const Expr& arg);
Abstraction const_abstraction(const Expr& t);

// Turns every VAR n of a proper term into the hole.
Abstraction abstract_var(const Expr& t, std::uint32_t n);

// Low-level substitution without pre-checks (used for open bodies).
Expr subst(const Expr& body, std::uint32_t level, const Expr& arg);

// Generic constructor-level rendering, e.g. ABS(APP(BND 0, VAR 3)).
std::string to_string(const Expr& e);

}  // namespace hybrid

template <>
struct std::hash<hybrid::Expr> {
    std::size_t operator()(const hybrid::Expr& e) const noexcept { return e.hash(); }
};
