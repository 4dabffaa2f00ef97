// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Named surface syntax, the encode/decode pair, and named substitution.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hybrid/detail/lexer.hpp"
#include "hybrid/expr.hpp"

namespace hybrid {

class unbound_name : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class signature_mismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class parse_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class Arity : std::uint8_t { nullary, binary, binder };

struct NamedTerm {
    enum class Kind : std::uint8_t { var, binder, app2, constant };
    Kind kind = Kind::var;
    ConstId op;
    std::string name;  // variable name or bound name
    std::shared_ptr<const NamedTerm> left;   // binder body or first operand
    std::shared_ptr<const NamedTerm> right;  // second operand

    static NamedTerm var(std::string name);
    static NamedTerm binder(ConstId op, std::string bound, NamedTerm body);
    static NamedTerm app2(ConstId op, NamedTerm l, NamedTerm r);
    static NamedTerm constant(ConstId op);

    const NamedTerm& body() const { return *left; }
};

// Syntactic identity (binder names included).
bool operator==(const NamedTerm& a, const NamedTerm& b);
inline bool operator!=(const NamedTerm& a, const NamedTerm& b) { return !(a == b); }

using VarContext = std::vector<std::string>;

class OLSignature {
   public:
    struct Entry {
        Arity arity;
        std::string keyword;  // surface spelling: binder keyword or infix operator
        // Raw entries map straight onto ABS / APP with no constant (pure lambda terms).
        bool raw = false;
    };

    void add(ConstId c, Arity arity, std::string keyword, bool raw = false);
    const Entry* find(ConstId c) const;
    std::optional<ConstId> by_keyword(const std::string& kw) const;
    // The unique binary constant, used as the infix application.
    std::optional<ConstId> binary() const;
    const std::map<ConstId, Entry>& entries() const { return entries_; }

   private:
    std::map<ConstId, Entry> entries_;
};

// Mini-ML term constants, shared by both bundled object logics.
struct MiniMLConsts {
    ConstId cABS, cAPP, cFIX;
};
const MiniMLConsts& miniml_consts();
const OLSignature& miniml_signature();
// Untyped lambda terms: `lam x. t` is a bare ABS and `t @ u` a bare APP.
const OLSignature& pure_lambda_signature();

Expr encode(const OLSignature& sig, const VarContext& ctx, const NamedTerm& t);

// Preferred names for binders, keyed by the binder subterm as seen during decoding.
// Alpha-equivalent binders share a key; their names are kept in source order. When a
// decoded term holds k copies of a key with n names, the copies take the last k names
// (or cycle through them when k > n).
using NameHints = std::unordered_map<Expr, std::vector<std::string>>;

std::optional<NamedTerm> decode(const OLSignature& sig, const VarContext& ctx, const Expr& e,
                                const NameHints* hints = nullptr);

// Records the binder names of `t` in the form decode looks them up.
void collect_name_hints(const OLSignature& sig, const VarContext& ctx, const NamedTerm& t,
                        NameHints& out);

NamedTerm subst_named(const NamedTerm& t, const std::string& x, const NamedTerm& s);

std::vector<std::string> free_names(const NamedTerm& t);

// Alpha-equivalence by binder matching, independent of encode.
bool alpha_equal(const NamedTerm& a, const NamedTerm& b);

NamedTerm parse_term(const OLSignature& sig, const std::string& text);
std::string print_term(const OLSignature& sig, const NamedTerm& t);

// Simple types over base i, encoded as expressions over tp constants.
struct TypeConsts {
    ConstId base, arrow;
};
const TypeConsts& type_consts();
Expr type_base();
Expr type_arrow(const Expr& a, const Expr& b);
Expr parse_type(const std::string& text);
// Returns nullopt when the expression is not a type.
std::optional<std::string> print_type(const Expr& t);

namespace detail {
// Parses one term from the stream, stopping at the first token that cannot continue it.
NamedTerm parse_term(const OLSignature& sig, TokenStream& ts);
}  // namespace detail

}  // namespace hybrid
