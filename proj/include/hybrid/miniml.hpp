// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Mini-ML object logic: clause database, reference evaluator, term generator.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybrid/formula.hpp"
#include "hybrid/surface.hpp"

namespace hybrid {

struct MiniMLPreds {
    ConstId isterm, eval, hastype;
};
const MiniMLPreds& miniml_preds();

Atom isterm_atom(const UTerm& e);
Atom eval_atom(const UTerm& e, const UTerm& v);
Atom hastype_atom(const UTerm& e, const UTerm& t);

// Term constructors over the Mini-ML constants. `body` is an abstraction body.
UTerm ml_app(const UTerm& a, const UTerm& b);
UTerm ml_fun(const UTerm& body);
UTerm ml_fix(const UTerm& body);

enum class MLShape : std::uint8_t { fun, fix, app, other };
// fun/fix: *a receives the binder body. app: *a and *b receive the operands.
MLShape ml_shape(const Expr& e, Expr* a, Expr* b);

// The nine well-formedness, evaluation and typing clauses.
const DatabaseHH& db_miniml();

struct EvalOutcome {
    enum class Status : std::uint8_t { value, stuck, out_of_fuel };
    Status status = Status::stuck;
    std::optional<Expr> value;
    std::uint64_t steps = 0;
};

constexpr std::uint64_t kDefaultFuel = 10'000;

// Call-by-value big-step evaluation of a closed term; each rule application costs one
// unit of fuel. Throws non_proper_argument on non-proper input and std::invalid_argument
// on open or non-Mini-ML terms. Strict mode also proves isterm(e) in the specification logic.
EvalOutcome meta_eval_detailed(const Expr& e, std::uint64_t fuel = kDefaultFuel, bool strict = false);
std::optional<Expr> meta_eval(const Expr& e, std::uint64_t fuel = kDefaultFuel);

struct SRReport {
    enum class Status : std::uint8_t { preserved, violated, inconclusive, precondition };
    Status status = Status::inconclusive;
    std::optional<Expr> value;
    std::vector<Expr> types;  // type solutions of the program, in search order
    std::string detail;
};
const char* to_string(SRReport::Status s);

// Checks evaluation agreement and type preservation for the first k type solutions.
SRReport sr_check_instance(const Expr& e, std::uint32_t bound, std::size_t k = 3,
                           std::uint64_t fuel = kDefaultFuel);

// Deterministic closed Mini-ML term with at most size_budget constructors.
NamedTerm gen_closed_named(std::uint64_t seed, std::size_t size_budget);
Expr gen_closed_term(std::uint64_t seed, std::size_t size_budget);

// Surface rendering of a closed Mini-ML term, or nullopt outside the encodable fragment.
std::optional<std::string> show_term(const Expr& e, const NameHints* hints = nullptr);

}  // namespace hybrid
