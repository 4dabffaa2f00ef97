// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Continuation-machine object logic: instructions, the small-step machine, a direct
// typing oracle, and the ordered clause database.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hybrid/formula.hpp"
#include "hybrid/surface.hpp"

namespace hybrid {

struct CMConsts {
    ConstId ev, ret, app1;                           // instructions
    ConstId ceval, exec, init, cont, of, ofI, ofK;  // predicates
};
const CMConsts& cm_consts();

// Instructions are expressions: APP(ev, e), APP(return, v), APP(APP(app1, v), e).
Expr instr_ev(const Expr& e);
Expr instr_return(const Expr& v);
Expr instr_app1(const Expr& v, const Expr& e);
UTerm instr_ev(const UTerm& e);
UTerm instr_return(const UTerm& v);
UTerm instr_app1(const UTerm& v, const UTerm& e);

Atom ceval_atom(const UTerm& e, const UTerm& v);
Atom exec_atom(const UTerm& i);
Atom init_atom(const UTerm& v);
// `frame` is the whole abstraction ABS(i).
Atom cont_atom(const UTerm& frame);
Atom of_atom(const UTerm& e, const UTerm& t);
Atom ofI_atom(const UTerm& i, const UTerm& t);
Atom ofK_atom(const UTerm& t);

// Frames from the bottom of the stack to the top. Each frame is an instruction body
// whose hole is the value slot.
using Cont = std::vector<Abstraction>;

struct Run {
    Cont k;
    Expr instr;
};
struct Answer {
    Expr value;
};
using MachineState = std::variant<Run, Answer>;

bool operator==(const MachineState& a, const MachineState& b);

std::optional<MachineState> machine_step(const MachineState& s);

struct MachineOutcome {
    enum class Status : std::uint8_t { value, stuck, out_of_fuel };
    Status status = Status::stuck;
    std::optional<Expr> value;
    std::uint64_t steps = 0;
};

// Runs from init <> ev e. `trace` receives every visited state, the initial one included.
// Throws non_proper_argument on non-proper input.
MachineOutcome machine_run_detailed(const Expr& e, std::uint64_t fuel, std::vector<MachineState>* trace = nullptr);
std::optional<Expr> machine_run(const Expr& e, std::uint64_t fuel, std::vector<MachineState>* trace = nullptr);

// Types of free variables, keyed by VAR index.
using TypeEnv = std::map<std::uint32_t, Expr>;

// Direct typing with an explicit context. Each check succeeds iff the subject has the
// given (ground) type.
bool typecheck_expr(const TypeEnv& gamma, const Expr& e, const Expr& t);
bool typecheck_instr(const TypeEnv& gamma, const Expr& i, const Expr& t);
// t must be an arrow tau1 -> tau2: the continuation accepts tau1 and answers tau2.
bool typecheck_cont(const TypeEnv& gamma, const Cont& k, const Expr& t);
bool typecheck_state(const MachineState& s, const Expr& t);

// Most general type of a closed Mini-ML term with its type variables set to the base
// type, or nullopt when untypeable.
std::optional<Expr> ground_principal_type(const Expr& e);

// Fifteen clauses: typing of expressions, instructions and continuations, then evaluation.
const DatabaseOlli& db_contmach();

struct CMReport {
    enum class Status : std::uint8_t { preserved, violated, inconclusive, precondition };
    Status status = Status::inconclusive;
    std::optional<Expr> value;
    std::size_t states = 0;
    std::string detail;
};
const char* to_string(CMReport::Status s);

CMReport sr_check_instance_cm(const Expr& e, const Expr& t, std::uint32_t bound, std::uint64_t fuel = 2'000);

// Surface rendering; frames print bottom first, e.g. `init ; x. app1 x (fun y. y) <> ev e`.
std::string show_instr(const Expr& i, const VarContext& ctx = {});
std::string show_state(const MachineState& s);

}  // namespace hybrid
