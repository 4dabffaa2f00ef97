// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Goals, clauses, derivations and search configuration shared by both provers.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hybrid/unify.hpp"

namespace hybrid {

struct Atom {
    ConstId pred;
    std::vector<UTerm> args;

    friend bool operator==(const Atom& a, const Atom& b) { return a.pred == b.pred && a.args == b.args; }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
};

enum class GoalKind : std::uint8_t { tt, atom, conj, imp, ord_imp, all };

// Inside an `all` body the bound term variable is BND(e + k) at term depth e, where k is
// the number of `all` binders between the occurrence and its own binder.
class Goal {
   public:
    Goal() = default;  // tt
    static Goal tt();
    static Goal at(Atom a);
    static Goal conj(Goal a, Goal b);
    static Goal imp(Atom a, Goal g);
    static Goal ord_imp(Atom a, Goal g);
    static Goal all(Goal body);

    GoalKind kind() const { return kind_; }
    const Atom& atom() const { return atom_; }  // atom, imp and ord_imp antecedent
    const Goal& left() const { return *a_; }    // conj left, imp/ord_imp/all body
    const Goal& right() const { return *b_; }   // conj right
    const Goal& body() const { return *a_; }

    friend bool operator==(const Goal& a, const Goal& b);
    friend bool operator!=(const Goal& a, const Goal& b) { return !(a == b); }

   private:
    GoalKind kind_ = GoalKind::tt;
    Atom atom_;
    std::shared_ptr<const Goal> a_, b_;
};

// Rebuilds a goal applying f(term, all_depth) to every atom argument.
Goal map_terms(const Goal& g, const std::function<UTerm(const UTerm&, std::uint32_t)>& f);
Atom map_terms(const Atom& a, const std::function<UTerm(const UTerm&)>& f);

// Body of an `all` goal with its bound variable replaced by `t`.
Goal instantiate_all(const Goal& body, const UTerm& t);

bool ground(const Atom& a);
bool ground(const Goal& g);
// Largest VAR index + 1 over all arguments.
std::uint32_t var_limit(const Atom& a);
std::uint32_t var_limit(const Goal& g);
bool occurs_var(std::uint32_t n, const Goal& g);
bool occurs_var(std::uint32_t n, const Atom& a);

struct VarDecl {
    std::string name;
    std::uint8_t arity = 0;  // 1: abstraction variable, carries an abstr condition
};

struct ClauseHH {
    std::string name;
    std::vector<VarDecl> vars;  // clause variable i is MV i / MApp(i, _) in head and body
    Atom head;
    Goal body;
};

struct ClauseOlli {
    std::string name;
    std::vector<VarDecl> vars;
    Atom head;
    std::vector<Goal> ordered;  // first element consumes the rightmost part of the context
    std::vector<Goal> intuit;
};

struct DatabaseHH {
    std::string name;
    std::vector<ClauseHH> clauses;
    // Value given to metavariables left unconstrained by a proof.
    Expr ground_default = Expr::con(ConstId::intern("tp", "i"));  // the base type
    // Throws std::invalid_argument on ill-formed clauses (arity misuse, unknown variables).
    void validate() const;
};

struct DatabaseOlli {
    std::string name;
    std::vector<ClauseOlli> clauses;
    Expr ground_default = Expr::con(ConstId::intern("tp", "i"));  // the base type
    void validate() const;
};

// Fresh store metas for the clause variables, in declaration order.
std::vector<MetaId> freshen_vars(const std::vector<VarDecl>& vars, MetaStore& store);
ClauseHH freshen_clause(const ClauseHH& c, MetaStore& store, std::vector<MetaId>* ids = nullptr);
ClauseOlli freshen_clause(const ClauseOlli& c, MetaStore& store, std::vector<MetaId>* ids = nullptr);

enum class Rule : std::uint8_t {
    tt_r,
    and_r,
    all_r,
    imp_r,
    ord_imp_r,
    init,
    init_omega,
    init_gamma,
    bc,
    ilist_nil,
    ilist_cons,
    olist_nil,
    olist_cons
};
const char* to_string(Rule r);

enum class Judgment : std::uint8_t { goal, ilist, olist };

// Ground derivation tree. `bound` is the height index the node was derived at; every
// premise of a non-axiom node carries a strictly smaller index.
struct Derivation {
    Rule rule = Rule::tt_r;
    Judgment judgment = Judgment::goal;
    std::vector<Atom> gamma;
    std::vector<Atom> omega;
    std::uint32_t bound = 0;
    Goal goal;                // goal judgment
    std::vector<Goal> goals;  // list judgments
    std::optional<Expr> eigen;
    std::size_t clause = 0;
    std::string clause_name;  // informational only; the checker uses `clause`
    std::vector<Expr> inst;  // bc: arity-0 values and arity-1 abstraction bodies
    std::size_t split = 0;   // olist_cons: length of the prefix handed to the tail
    std::vector<Derivation> premises;
};

// Length of the longest premise chain (axioms have height 0).
std::uint32_t height(const Derivation& d);
std::size_t node_count(const Derivation& d);

enum class Strategy : std::uint8_t { dfs, iddfs };

struct SearchConfig {
    std::uint32_t bound = 10;
    Strategy strategy = Strategy::dfs;
    std::size_t max_solutions = 1;
    std::uint64_t step_limit = 20'000'000;
};

enum class Outcome : std::uint8_t { proved, failed, exhausted };
const char* to_string(Outcome o);

struct Solution {
    // Ground values of the metas that existed before the search, indexed by MetaId.
    std::vector<Expr> metas;
    Derivation derivation;
};

struct SearchResult {
    Outcome outcome = Outcome::failed;
    std::vector<Solution> solutions;
    std::uint64_t steps = 0;
    bool proved() const { return outcome == Outcome::proved; }
};

struct CheckResult {
    bool ok = true;
    std::string path;  // premise indices from the root, e.g. "0.1.0"
    std::string message;
    explicit operator bool() const { return ok; }
};

using VarNamer = std::function<std::string(std::uint32_t)>;
using AtomPrinter = std::function<std::string(const Atom&, const VarNamer&)>;

// pred(arg, ...) with constructor-level arguments.
std::string default_atom_printer(const Atom& a, const VarNamer& names);
std::string print_goal(const Goal& g, const AtomPrinter& p);
std::string print_sequent(const Derivation& d, const AtomPrinter& p);
// One line per node in preorder: depth TAB rule TAB sequent.
std::string trace_lines(const Derivation& d, const AtomPrinter& p);

namespace detail {
// Display-only range for variables bound by `all` inside printed goals.
constexpr std::uint32_t kDisplayVarBase = 1u << 30;
}  // namespace detail

}  // namespace hybrid
