// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Textual queries over the bundled object logics, and solution rendering.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hybrid/formula.hpp"
#include "hybrid/surface.hpp"

namespace hybrid {

enum class OLKind : std::uint8_t { miniml, contmach };
enum class SLKind : std::uint8_t { hh, olli };

// Thrown for queries that are well formed but cannot be run (wrong logic, wrong predicate).
class usage_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

// What an existential variable stands for, used to pick its printer.
enum class Sort : std::uint8_t { term, type, instr, frame };

struct ParsedQuery {
    Goal goal;
    std::vector<std::string> names;  // existential variables, in order
    std::vector<MetaId> metas;
    std::vector<Sort> sorts;
    NameHints hints;  // binder names of the closed terms written in the query
};

// Goal ::= "exists" X ("," X)* "." Goal | Body
// Body ::= Unit ("and" Body)?
// Unit ::= "tt" | "all" x "." Body | "(" Body ")" | Atom (("imp" | "->>") Body)?
// Throws parse_error, unbound_name or usage_error.
ParsedQuery parse_query(OLKind ol, const std::string& text, MetaStore& store);

// Atom printer for traces: Mini-ML terms, types and instructions in surface form.
std::string ol_atom_printer(const Atom& a, const VarNamer& names);

std::string show_value(const Expr& v, Sort s, const NameHints* hints = nullptr);

struct QueryOptions {
    OLKind ol = OLKind::miniml;
    SLKind sl = SLKind::hh;
    SearchConfig cfg;
    bool trace = false;
    bool json = false;
    bool show_height = false;
};

// Exit statuses of run_query.
constexpr int kExitSolved = 0;
constexpr int kExitFailed = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitUsage = 3;
constexpr int kExitCheck = 4;

// Runs the query, printing one line per solution to `out` and diagnostics to `err`.
int run_query(const QueryOptions& opts, const std::string& text, std::ostream& out, std::ostream& err);

OLKind parse_ol(const std::string& s);
SLKind parse_sl(const std::string& s);

}  // namespace hybrid
