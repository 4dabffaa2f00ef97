// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>

namespace hybrid::detail {

// Shared node layout for ground expressions and unification terms. Expr only
// ever points at nodes without mv/mapp kinds; UTerm may point at any node.
enum class NodeKind : std::uint8_t { con, var, bnd, app, abs, mv, mapp };

struct TermNode;
using NodePtr = std::shared_ptr<const TermNode>;

struct TermNode {
    NodeKind kind;
    std::uint32_t value = 0;  // constant id, VAR index, BND index or meta id
    NodePtr left;             // app: function; abs: body; mapp: argument
    NodePtr right;            // app: argument
    std::uint32_t size = 1;
    // Smallest l such that the node is at level l (0 for proper terms).
    std::uint32_t loose = 0;
    // One past the largest VAR index occurring in the node.
    std::uint32_t var_limit = 0;
    bool has_meta = false;
    std::size_t hash = 0;
};

NodePtr make_con(std::uint32_t id);
NodePtr make_var(std::uint32_t n);
NodePtr make_bnd(std::uint32_t j);
NodePtr make_app(NodePtr l, NodePtr r);
NodePtr make_abs(NodePtr body);
NodePtr make_mv(std::uint32_t id);
NodePtr make_mapp(std::uint32_t id, NodePtr arg);

bool equal(const TermNode& a, const TermNode& b);

// Adds `by` to every BND index that points at or beyond `cutoff` binders.
NodePtr shift(const NodePtr& t, std::uint32_t by, std::uint32_t cutoff = 0);

// Replaces the bound index `level` (counted from outside `body`) by `arg`,
// shifting arg under binders and closing the gap left by the removed binder.
NodePtr subst(const NodePtr& body, std::uint32_t level, const NodePtr& arg);

// Replaces every VAR n by the hole index for `level` (inverse of subst with a
// fresh variable). Existing indices >= level are pushed up by one.
NodePtr abstract_var(const NodePtr& t, std::uint32_t n, std::uint32_t level = 0);

// lbind renumbering: each hole occurrence (BND d at ABS depth d) becomes BND d+i.
NodePtr renumber_hole(const NodePtr& body, std::uint32_t i);

}  // namespace hybrid::detail
