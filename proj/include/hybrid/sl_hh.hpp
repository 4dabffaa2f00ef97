// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Minimal hereditary Harrop specification logic: height-bounded search and checking.

#pragma once

#include <vector>

#include "hybrid/formula.hpp"

namespace hybrid {

// Searches for a derivation of ctx |-bound goal. On success the first solution's values
// are bound into `store` for every query meta that was still unbound; on failure the
// store is unchanged. Throws non_pattern_error from unification.
SearchResult prove_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, const Goal& goal, MetaStore& store,
                      const SearchConfig& cfg);
SearchResult prove_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, std::uint32_t bound, const Goal& goal,
                      MetaStore& store);

// Up to cfg.max_solutions solutions in search order; the store is left unchanged.
SearchResult solutions_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, const Goal& goal,
                          MetaStore& store, const SearchConfig& cfg);

CheckResult check_hh(const DatabaseHH& db, const Derivation& d);

}  // namespace hybrid
