// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Acceptance runner: one PASS/FAIL line per criterion, each under its own time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "hybrid/contmach.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/sl_hh.hpp"
#include "hybrid/sl_olli.hpp"
#include "hybrid/suites.hpp"

using namespace hybrid;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Verdict {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<Verdict()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < limit_s;
    bool pass = o.ok && in_time;
    if (!pass) ++failures;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f s / %.3g s", s, limit_s);
    std::cout << "AC" << n << (n < 10 ? "  " : " ") << (pass ? "PASS" : "FAIL") << "  " << name << "  [" << buf
              << "]";
    if (!in_time) std::cout << "  over time limit";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
}

Verdict from_report(const SuiteReport& r, bool all_pass) {
    bool ok = r.failed == 0 && (!all_pass || r.passed == r.run);
    std::string d = r.summary();
    for (std::size_t i = 0; i < r.diagnostics.size() && i < 5; ++i) d += "\n      " + r.diagnostics[i];
    return {ok, d};
}

Expr term(const std::string& s) { return encode(miniml_signature(), {}, parse_term(miniml_signature(), s)); }

}  // namespace

int main() {
    criterion(1, "golden term expansion", 0.001, [] {
        NamedTerm t = parse_term(pure_lambda_signature(), "lam v1. (lam v2. v1 @ v2) @ v1 @ v3");
        Expr e = encode(pure_lambda_signature(), {"c0", "c1", "c2", "v3"}, t);
        Expr want = Expr::abs(Expr::app(Expr::app(Expr::abs(Expr::app(Expr::bnd(1), Expr::bnd(0))), Expr::bnd(0)),
                                        Expr::var(3)));
        return Verdict{e == want, to_string(e)};
    });

    criterion(2, "lbind golden case", 0.001, [] {
        Abstraction a{Expr::abs(Expr::app(Expr::bnd(0), Expr::bnd(1)))};
        Expr l = lbind(0, a);
        Expr lam = lambda(a);
        bool ok = l == Expr::abs(Expr::app(Expr::bnd(0), Expr::bnd(1))) &&
                  lam == Expr::abs(Expr::abs(Expr::app(Expr::bnd(0), Expr::bnd(1))));
        return Verdict{ok, "lbind = " + to_string(l) + ", lambda = " + to_string(lam)};
    });

    criterion(3, "lambda injectivity on 1000 abstraction pairs", 5,
              [] { return from_report(suite_abstraction(kSeed, 1000), true); });

    criterion(4, "adequacy round trips and compositionality, 200 terms", 10,
              [] { return from_report(suite_adequacy(kSeed, 200), true); });

    std::vector<Derivation> hh_proofs, olli_proofs;

    criterion(5, "principal type of fun x. fun y. x @ y at bound 8", 1, [&] {
        MetaStore store;
        MetaId t = store.fresh_meta(0);
        Expr e = term("fun x. fun y. x @ y");
        auto r = prove_hh(db_miniml(), {}, 8, Goal::at(hastype_atom(e, UTerm::mv(t))), store);
        if (!r.proved()) return Verdict{false, to_string(r.outcome)};
        hh_proofs.push_back(r.solutions[0].derivation);
        Expr ii = type_arrow(type_base(), type_base());
        Expr got = r.solutions[0].metas[t];
        return Verdict{got == type_arrow(ii, ii), "T = " + print_type(got).value_or(to_string(got))};
    });

    std::vector<Expr> corpus = default_corpus(100, kSeed);
    std::vector<Derivation> eval_proofs;

    criterion(6, "evaluator vs eval proofs on 100 terms (fuel 10000, bound 60)", 120, [&] {
        auto r = suite_equivalence(corpus, 10'000, 60, &eval_proofs);
        return from_report(r, false);
    });

    criterion(7, "structural properties on 50 harvested sequents", 60, [&] {
        auto seqs = harvest_sequents(eval_proofs, 50, kSeed);
        if (seqs.size() < 50) return Verdict{false, "only " + std::to_string(seqs.size()) + " sequents harvested"};
        return from_report(suite_structural_hh(seqs, kSeed), true);
    });

    criterion(8, "subject reduction instances on the corpus (first 3 types)", 120,
              [&] { return from_report(suite_sr_miniml(corpus, 60, 3, 10'000), false); });

    criterion(9, "ceval of fun x. x in the ordered logic at bound 20", 2, [&] {
        MetaStore store;
        MetaId v = store.fresh_meta(0);
        Expr e = term("fun x. x");
        SearchConfig cfg;
        cfg.bound = 20;
        auto r = prove_olli(db_contmach(), {}, {}, Goal::at(ceval_atom(e, UTerm::mv(v))), store, cfg);
        if (!r.proved()) return Verdict{false, to_string(r.outcome)};
        olli_proofs.push_back(r.solutions[0].derivation);
        Expr got = r.solutions[0].metas[v];
        return Verdict{got == e, "V = " + show_term(got).value_or(to_string(got)) +
                                     ", height " + std::to_string(height(r.solutions[0].derivation))};
    });

    std::vector<Expr> corpus50(corpus.begin(), corpus.begin() + 50);
    std::vector<Derivation> ceval_proofs, typing_proofs;

    criterion(11, "machine vs ceval proofs on 50 terms (fuel 2000, bound 80)", 180, [&] {
        return from_report(suite_machine(corpus50, 2'000, 80, &ceval_proofs), false);
    });

    criterion(12, "continuation-machine subject reduction on typeable corpus terms", 180, [&] {
        return from_report(suite_sr_contmach(corpus, 80, 2'000, &typing_proofs), false);
    });

    criterion(10, "ordered-logic structural properties on 30 harvested sequents", 60, [&] {
        std::vector<Derivation> src = ceval_proofs;
        src.insert(src.end(), typing_proofs.begin(), typing_proofs.end());
        auto seqs = harvest_sequents(src, 30, kSeed);
        if (seqs.size() < 30) return Verdict{false, "only " + std::to_string(seqs.size()) + " sequents harvested"};
        return from_report(suite_structural_olli(seqs, kSeed), true);
    });

    criterion(13, "checker accepts emitted derivations and rejects 500 mutations", 30, [&] {
        std::vector<Derivation> hh = hh_proofs, olli = olli_proofs;
        hh.insert(hh.end(), eval_proofs.begin(), eval_proofs.end());
        olli.insert(olli.end(), ceval_proofs.begin(), ceval_proofs.end());
        olli.insert(olli.end(), typing_proofs.begin(), typing_proofs.end());
        return from_report(suite_checker(hh, olli, 500, kSeed), true);
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
