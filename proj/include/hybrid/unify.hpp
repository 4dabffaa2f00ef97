// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Metavariables, eigenvariable watermarks and pattern unification.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybrid/expr.hpp"

namespace hybrid {

using MetaId = std::uint32_t;

class non_pattern_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

using detail::NodeKind;

// Expressions extended with MV (arity 0) and MApp (arity-1 meta applied to one argument).
class UTerm {
   public:
    UTerm(const Expr& e) : node_(e.node()) {}  // NOLINT(google-explicit-constructor)
    static UTerm con(ConstId c);
    static UTerm var(std::uint32_t n);
    static UTerm bnd(std::uint32_t j);
    static UTerm app(const UTerm& l, const UTerm& r);
    static UTerm abs(const UTerm& body);
    static UTerm mv(MetaId m);
    static UTerm mapp(MetaId m, const UTerm& arg);
    static UTerm from_node(detail::NodePtr n) { return UTerm(std::move(n)); }

    NodeKind kind() const { return node_->kind; }
    bool is(NodeKind k) const { return node_->kind == k; }
    std::uint32_t value() const { return node_->value; }  // const id, index or meta id
    UTerm left() const { return UTerm(node_->left); }      // app function, abs body, mapp argument
    UTerm right() const { return UTerm(node_->right); }
    bool ground() const { return !node_->has_meta; }
    std::uint32_t loose() const { return node_->loose; }
    std::uint32_t var_limit() const { return node_->var_limit; }
    const detail::NodePtr& node() const { return node_; }

    std::optional<Expr> to_expr() const;
    Expr expr() const;  // throws std::invalid_argument when not ground

    friend bool operator==(const UTerm& a, const UTerm& b) { return detail::equal(*a.node_, *b.node_); }
    friend bool operator!=(const UTerm& a, const UTerm& b) { return !(a == b); }

   private:
    explicit UTerm(detail::NodePtr n) : node_(std::move(n)) {}
    detail::NodePtr node_;
};

// Substitutes `arg` for bound index `level` in an open body (both may contain metas).
UTerm subst(const UTerm& body, std::uint32_t level, const UTerm& arg);

std::string to_string(const UTerm& t);

struct MetaInfo {
    std::uint8_t arity = 0;
    std::uint32_t watermark = 0;
    // arity 0: a term with no dangling index; arity 1: an abstraction body.
    std::optional<UTerm> binding;
};

class MetaStore {
   public:
    MetaId fresh_meta(std::uint8_t arity);
    Expr fresh_eigen();
    // Moves the eigen counter past n so that fresh eigenvariables avoid existing VARs.
    void reserve_eigen(std::uint32_t n);

    const MetaInfo& info(MetaId m) const { return metas_.at(m); }
    std::size_t size() const { return metas_.size(); }
    std::uint32_t eigen_counter() const { return eigen_; }

    // Trail positions; undo restores bindings, watermarks, metas and the eigen counter.
    std::size_t mark() const { return trail_.size(); }
    void undo(std::size_t mark);

    void bind(MetaId m, const UTerm& value);
    void lower_watermark(MetaId m, std::uint32_t w);

   private:
    enum class Op : std::uint8_t { bind, watermark, meta, eigen };
    struct Entry {
        Op op;
        MetaId id;
        std::uint32_t old;
    };
    std::vector<MetaInfo> metas_;
    std::vector<Entry> trail_;
    std::uint32_t eigen_ = 0;
};

enum class UnifyStatus : std::uint8_t { ok, clash, occurs, scope };

const char* to_string(UnifyStatus s);

// On any status other than ok the store is left as it was. Throws non_pattern_error
// (store unchanged) when an unbound arity-1 meta is applied outside the pattern fragment.
UnifyStatus unify(const UTerm& a, const UTerm& b, MetaStore& store);

UTerm resolve(const UTerm& t, const MetaStore& store);

// Head normalisation: follows bound MV and bound MApp heads only.
UTerm shallow_resolve(const UTerm& t, const MetaStore& store);

// Replaces clause-local meta ids (0..n-1) with the given store ids.
UTerm rename_metas(const UTerm& t, const std::vector<MetaId>& to);

// Replaces clause-local meta ids with values: arity 0 terms, arity 1 abstraction bodies.
UTerm apply_instantiation(const UTerm& t, const std::vector<UTerm>& values);

}  // namespace hybrid
