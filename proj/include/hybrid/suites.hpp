// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Property suites over generated corpora, shared by the CLI and the acceptance runner.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hybrid/formula.hpp"

namespace hybrid {

enum class CaseStatus : std::uint8_t { pass, fail, inconclusive, skipped };

struct SuiteReport {
    std::string suite;
    std::size_t run = 0, passed = 0, failed = 0, inconclusive = 0, skipped = 0;
    std::vector<std::string> diagnostics;  // one entry per failing or inconclusive case
    double seconds = 0;

    void add(CaseStatus s, const std::string& detail = {});
    bool ok() const { return failed == 0; }
    std::string summary() const;
};

// The hand-picked terms followed by seeded random closed terms, n in total.
std::vector<Expr> default_corpus(std::size_t n, std::uint64_t seed);
// One surface term per line; `#` starts a comment. Throws parse_error naming the line.
std::vector<Expr> load_corpus(const std::string& path);

// lambda a1 = lambda a2 iff a1.body = a2.body, over random abstraction pairs.
SuiteReport suite_abstraction(std::uint64_t seed, std::size_t samples);

// encode/decode round trips and compositionality on closed and open terms.
SuiteReport suite_adequacy(std::uint64_t seed, std::size_t samples);

// meta_eval against eval proofs; first-solution derivations go to `proofs`.
SuiteReport suite_equivalence(const std::vector<Expr>& corpus, std::uint64_t fuel, std::uint32_t bound,
                              std::vector<Derivation>* proofs = nullptr);

// Distinct goal-judgment subderivations, a seeded sample of at most n.
std::vector<Derivation> harvest_sequents(const std::vector<Derivation>& proofs, std::size_t n, std::uint64_t seed);

// Height weakening (n, n+1, n+5), context weakening with two injected atoms, and atomic
// cut instances built by deepening.
SuiteReport suite_structural_hh(const std::vector<Derivation>& sequents, std::uint64_t seed);
SuiteReport suite_structural_olli(const std::vector<Derivation>& sequents, std::uint64_t seed);

SuiteReport suite_sr_miniml(const std::vector<Expr>& corpus, std::uint32_t bound, std::size_t k, std::uint64_t fuel);

// machine_run against ceval proofs.
SuiteReport suite_machine(const std::vector<Expr>& corpus, std::uint64_t fuel, std::uint32_t bound,
                          std::vector<Derivation>* proofs = nullptr);

// Per-state typing along the machine trace plus the ordered-logic cross-check. Typing
// derivations of the values go to `proofs`.
SuiteReport suite_sr_contmach(const std::vector<Expr>& corpus, std::uint32_t bound, std::uint64_t fuel,
                              std::vector<Derivation>* proofs = nullptr);

// Every given derivation must check, and every single-node mutation must be rejected.
// hh derivations are checked against the Mini-ML database, olli ones against the
// continuation-machine database.
SuiteReport suite_checker(const std::vector<Derivation>& hh, const std::vector<Derivation>& olli,
                          std::size_t mutations, std::uint64_t seed);

struct SuiteOptions {
    std::uint64_t seed = 42;
    std::size_t samples = 0;  // 0: the suite's default
    std::optional<std::vector<Expr>> corpus;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for unknown names.
SuiteReport run_named_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace hybrid
