// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#pragma once

#include <functional>
#include <string>

#include "hybrid/formula.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/surface.hpp"

namespace hybrid::testing {

inline Expr term(const std::string& s) { return encode(miniml_signature(), {}, parse_term(miniml_signature(), s)); }

inline Atom atom(const char* pred, const char* arg) {
    return Atom{ConstId::intern("test", pred), {UTerm::con(ConstId::intern("test", arg))}};
}

// First node in preorder satisfying `pred`, or nullptr.
inline Derivation* find_node(Derivation& d, const std::function<bool(const Derivation&)>& pred) {
    if (pred(d)) return &d;
    for (auto& p : d.premises)
        if (Derivation* r = find_node(p, pred)) return r;
    return nullptr;
}

inline void for_each_node(const Derivation& d, const std::function<void(const Derivation&)>& f) {
    f(d);
    for (const auto& p : d.premises) for_each_node(p, f);
}

}  // namespace hybrid::testing
