// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Ordered linear specification logic: three judgments, context splitting, checking.

#pragma once

#include <utility>
#include <vector>

#include "hybrid/formula.hpp"

namespace hybrid {

// All (prefix, suffix) pairs of omega, shortest prefix first.
template <class T>
std::vector<std::pair<std::vector<T>, std::vector<T>>> osplit_enum(const std::vector<T>& omega) {
    std::vector<std::pair<std::vector<T>, std::vector<T>>> out;
    for (std::size_t k = 0; k <= omega.size(); ++k)
        out.emplace_back(std::vector<T>(omega.begin(), omega.begin() + k),
                         std::vector<T>(omega.begin() + k, omega.end()));
    return out;
}

// Gamma ; Omega |-bound goal. Store handling as for prove_hh.
SearchResult prove_olli(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                        const Goal& goal, MetaStore& store, const SearchConfig& cfg);

// Gamma ; Omega |-bound goals, consumed multiplicatively.
SearchResult prove_olist(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                         const std::vector<Goal>& goals, MetaStore& store, const SearchConfig& cfg);

// Gamma |-bound goals, each with an empty ordered context.
SearchResult prove_ilist(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Goal>& goals,
                         MetaStore& store, const SearchConfig& cfg);

// Same as the prove_* functions but never touches the store's bindings.
SearchResult solutions_olli(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                            const Goal& goal, MetaStore& store, const SearchConfig& cfg);

CheckResult check_olli(const DatabaseOlli& db, const Derivation& d);

// Each hereditary Harrop clause A <= G becomes A <= [] | [G].
DatabaseOlli to_olli(const DatabaseHH& db);

}  // namespace hybrid
