// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/suites.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hybrid/contmach.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/query.hpp"
#include "hybrid/sl_hh.hpp"
#include "hybrid/sl_olli.hpp"

namespace hybrid {

void SuiteReport::add(CaseStatus s, const std::string& detail) {
    ++run;
    switch (s) {
        case CaseStatus::pass:
            ++passed;
            return;
        case CaseStatus::fail:
            ++failed;
            diagnostics.push_back("FAIL " + detail);
            return;
        case CaseStatus::inconclusive:
            ++inconclusive;
            diagnostics.push_back("INCONCLUSIVE " + detail);
            return;
        case CaseStatus::skipped:
            ++skipped;
            return;
    }
}

std::string SuiteReport::summary() const {
    std::ostringstream o;
    o << suite << ": run " << run << ", passed " << passed << ", failed " << failed << ", inconclusive "
      << inconclusive << ", skipped " << skipped;
    return o.str();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point start = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

std::uint64_t mix(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::string show(const Expr& e) { return show_term(e).value_or(to_string(e)); }

const std::vector<std::string>& hand_terms() {
    static const std::vector<std::string> t = {
        "fun x. x",
        "fun x. fun y. x @ y",
        "(fun x. x) @ (fun y. y)",
        "fix x. fun y. x @ y",
        "(fun x. fun y. x) @ ((fun z. z) @ (fun w. w))",
        "fix x. x",
        "(fun f. f @ (fun z. z)) @ (fun y. y)",
        "(fun x. x @ x) @ (fun y. y)",
        "(fix f. fun x. x) @ (fun y. y)",
        "(fun x. fun y. y) @ (fix z. z)",
    };
    return t;
}

}  // namespace

std::vector<Expr> default_corpus(std::size_t n, std::uint64_t seed) {
    std::vector<Expr> out;
    for (const auto& s : hand_terms()) {
        if (out.size() == n) return out;
        out.push_back(encode(miniml_signature(), {}, parse_term(miniml_signature(), s)));
    }
    std::unordered_set<Expr> seen(out.begin(), out.end());
    for (std::size_t i = 0; out.size() < n; ++i) {
        Expr e = gen_closed_term(mix(seed, i), 3 + i % 16);
        if (seen.insert(e).second) out.push_back(e);
    }
    return out;
}

std::vector<Expr> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open corpus file " + path);
    std::vector<Expr> out;
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(encode(miniml_signature(), {}, parse_term(miniml_signature(), line)));
        } catch (const std::invalid_argument& e) {
            throw parse_error(path + ":" + std::to_string(no) + ": " + e.what());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// abstractions

namespace {

Expr gen_body(std::mt19937_64& rng, std::uint32_t depth, std::size_t budget) {
    static const ConstId c0 = ConstId::intern("test", "c0"), c1 = ConstId::intern("test", "c1");
    if (budget <= 1) {
        switch (rng() % 4) {
            case 0:
                return Expr::bnd(depth);  // the hole
            case 1:
                return Expr::bnd(static_cast<std::uint32_t>(rng() % (depth + 1)));
            case 2:
                return Expr::var(static_cast<std::uint32_t>(rng() % 3));
            default:
                return Expr::con(rng() % 2 ? c0 : c1);
        }
    }
    if (rng() % 3 == 0) return Expr::abs(gen_body(rng, depth + 1, budget - 1));
    std::size_t left = 1 + rng() % (budget - 1);
    Expr l = gen_body(rng, depth, left);
    return Expr::app(l, gen_body(rng, depth, budget - left));
}

// Replaces the k-th leaf (preorder) by a different leaf.
Expr mutate_leaf(const Expr& e, std::size_t& k, std::uint32_t depth) {
    switch (e.kind()) {
        case ExprKind::app: {
            Expr l = mutate_leaf(e.left(), k, depth);
            return Expr::app(l, mutate_leaf(e.right(), k, depth));
        }
        case ExprKind::abs:
            return Expr::abs(mutate_leaf(e.body(), k, depth + 1));
        default:
            if (k-- != 0) return e;
            if (e.is(ExprKind::var)) return Expr::var(e.index() + 1);
            return Expr::var(7);
    }
}

std::size_t leaves(const Expr& e) {
    if (e.is(ExprKind::app)) return leaves(e.left()) + leaves(e.right());
    if (e.is(ExprKind::abs)) return leaves(e.body());
    return 1;
}

// Structural copy that shares no nodes with the input.
Expr rebuild(const Expr& e) {
    switch (e.kind()) {
        case ExprKind::app:
            return Expr::app(rebuild(e.left()), rebuild(e.right()));
        case ExprKind::abs:
            return Expr::abs(rebuild(e.body()));
        case ExprKind::con:
            return Expr::con(e.con_id());
        case ExprKind::var:
            return Expr::var(e.index());
        case ExprKind::bnd:
            return Expr::bnd(e.index());
    }
    return e;
}

}  // namespace

SuiteReport suite_abstraction(std::uint64_t seed, std::size_t samples) {
    Timer t;
    SuiteReport rep;
    rep.suite = "abstraction";
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        Expr b1 = gen_body(rng, 0, 1 + rng() % 12);
        Expr b2 = b1;
        switch (rng() % 3) {
            case 0:
                b2 = rebuild(b1);
                break;
            case 1:
                b2 = gen_body(rng, 0, 1 + rng() % 12);
                break;
            default: {
                std::size_t k = rng() % leaves(b1);
                b2 = mutate_leaf(b1, k, 0);
            }
        }
        Abstraction a1{b1}, a2{b2};
        if (!abstr(a1) || !abstr(a2)) {
            rep.add(CaseStatus::fail, "generated body is not an abstraction: " + to_string(b1));
            continue;
        }
        bool bodies = to_string(b1) == to_string(b2);
        bool lambdas = lambda(a1) == lambda(a2);
        if (bodies == lambdas)
            rep.add(CaseStatus::pass);
        else
            rep.add(CaseStatus::fail, to_string(b1) + " vs " + to_string(b2));
    }
    rep.seconds = t.seconds();
    return rep;
}

// ---------------------------------------------------------------------------------------
// adequacy

namespace {

NamedTerm gen_named(std::mt19937_64& rng, std::size_t budget, std::vector<std::string>& scope) {
    static const std::vector<std::string> pool = {"x", "y", "z"};
    const auto& k = miniml_consts();
    bool can_var = !scope.empty();
    if (budget <= 1 && can_var) return NamedTerm::var(scope[rng() % scope.size()]);
    std::uint64_t r = rng() % 10;
    if (budget >= 3 && r < 3) {
        std::size_t left = 1 + rng() % (budget - 2);
        NamedTerm a = gen_named(rng, left, scope);
        NamedTerm b = gen_named(rng, budget - 1 - left, scope);
        return NamedTerm::app2(k.cAPP, std::move(a), std::move(b));
    }
    if (r < 7 || !can_var) {
        std::string x = pool[rng() % pool.size()];
        scope.push_back(x);
        NamedTerm b = gen_named(rng, budget > 1 ? budget - 1 : 1, scope);
        scope.pop_back();
        return NamedTerm::binder(r % 4 == 0 ? k.cFIX : k.cABS, x, std::move(b));
    }
    return NamedTerm::var(scope[rng() % scope.size()]);
}

}  // namespace

SuiteReport suite_adequacy(std::uint64_t seed, std::size_t samples) {
    Timer t;
    SuiteReport rep;
    rep.suite = "adequacy";
    const OLSignature& sig = miniml_signature();
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        VarContext ctx;
        if (i % 2 == 1) ctx = {"a", "b"};
        std::vector<std::string> scope = ctx;
        NamedTerm n = gen_named(rng, 1 + rng() % 14, scope);
        std::string label = print_term(sig, n);
        Expr e = encode(sig, ctx, n);
        auto back = decode(sig, ctx, e);
        if (!proper(e) || !back || !alpha_equal(*back, n)) {
            rep.add(CaseStatus::fail, "decode(encode t) differs for " + label);
            continue;
        }
        if (encode(sig, ctx, *back) != e) {
            rep.add(CaseStatus::fail, "encode(decode e) differs for " + label);
            continue;
        }
        // Compositionality: encode(t[s/w]) = instantiate(abstract w in encode(t), encode s).
        VarContext ctx2 = ctx;
        ctx2.push_back("w");
        std::vector<std::string> scope2 = ctx2;
        NamedTerm body = gen_named(rng, 1 + rng() % 10, scope2);
        std::vector<std::string> scope3 = ctx;
        NamedTerm s = gen_named(rng, 1 + rng() % 6, scope3);
        Expr lhs = encode(sig, ctx, subst_named(body, "w", s));
        Abstraction abs = abstract_var(encode(sig, ctx2, body), static_cast<std::uint32_t>(ctx.size()));
        Expr rhs = instantiate(abs, encode(sig, ctx, s));
        if (lhs != rhs) {
            rep.add(CaseStatus::fail,
                    "compositionality fails for " + print_term(sig, body) + " with w := " + print_term(sig, s));
            continue;
        }
        rep.add(CaseStatus::pass);
    }
    rep.seconds = t.seconds();
    return rep;
}

// ---------------------------------------------------------------------------------------
// evaluation equivalence

SuiteReport suite_equivalence(const std::vector<Expr>& corpus, std::uint64_t fuel, std::uint32_t bound,
                              std::vector<Derivation>* proofs) {
    Timer t;
    SuiteReport rep;
    rep.suite = "equivalence";
    for (const auto& e : corpus) {
        std::string label = show(e);
        EvalOutcome me = meta_eval_detailed(e, fuel);
        MetaStore store;
        MetaId v = store.fresh_meta(0);
        SearchConfig cfg;
        cfg.bound = bound;
        cfg.max_solutions = 2;
        SearchResult sl = solutions_hh(db_miniml(), {}, Goal::at(eval_atom(e, UTerm::mv(v))), store, cfg);
        if (proofs && sl.proved()) proofs->push_back(sl.solutions[0].derivation);
        bool agree = true;
        for (const auto& s : sl.solutions) agree = agree && me.value && s.metas[v] == *me.value;
        if (sl.proved()) {
            if (agree)
                rep.add(CaseStatus::pass);
            else
                rep.add(CaseStatus::fail, label + ": evaluation proof disagrees with the evaluator");
            continue;
        }
        if (me.status == EvalOutcome::Status::value) {
            if (sl.outcome == Outcome::exhausted)
                rep.add(CaseStatus::inconclusive, label + ": proof search hit bound " + std::to_string(bound));
            else
                rep.add(CaseStatus::fail, label + ": evaluator converges but no evaluation proof exists");
            continue;
        }
        if (me.status == EvalOutcome::Status::stuck) {
            rep.add(CaseStatus::pass);
            continue;
        }
        rep.add(CaseStatus::inconclusive, label + ": diverges within fuel " + std::to_string(fuel));
    }
    rep.seconds = t.seconds();
    return rep;
}

// ---------------------------------------------------------------------------------------
// structural properties

namespace {

void goal_nodes(const Derivation& d, std::vector<const Derivation*>& out) {
    if (d.judgment == Judgment::goal) out.push_back(&d);
    for (const auto& p : d.premises) goal_nodes(p, out);
}

bool same_set(const std::vector<Atom>& a, const std::vector<Atom>& b) {
    auto in = [](const Atom& x, const std::vector<Atom>& xs) { return std::find(xs.begin(), xs.end(), x) != xs.end(); };
    for (const auto& x : a)
        if (!in(x, b)) return false;
    for (const auto& x : b)
        if (!in(x, a)) return false;
    return true;
}

struct Prover {
    bool olli;

    SearchResult prove(const std::vector<Atom>& gamma, const std::vector<Atom>& omega, const Goal& g,
                       std::uint32_t bound) const {
        MetaStore st;
        SearchConfig cfg;
        cfg.bound = bound;
        if (olli) return solutions_olli(db_contmach(), gamma, omega, g, st, cfg);
        return solutions_hh(db_miniml(), gamma, g, st, cfg);
    }

    // Smallest bound <= cap at which the sequent is provable.
    std::optional<std::uint32_t> least(const std::vector<Atom>& gamma, const std::vector<Atom>& omega, const Goal& g,
                                       std::uint32_t cap) const {
        for (std::uint32_t b = 0; b <= cap; ++b)
            if (prove(gamma, omega, g, b).proved()) return b;
        return std::nullopt;
    }
};

SuiteReport structural(const std::vector<Derivation>& seqs, std::uint64_t seed, bool olli) {
    Timer t;
    SuiteReport rep;
    rep.suite = olli ? "structural-olli" : "structural-hh";
    Prover pv{olli};
    std::mt19937_64 rng(seed);
    std::vector<Atom> pool;
    for (const auto& s : seqs)
        if (s.goal.kind() == GoalKind::atom) pool.push_back(s.goal.atom());
    if (pool.empty()) pool.push_back(olli ? init_atom(Expr::var(900)) : isterm_atom(Expr::var(900)));

    for (const auto& s : seqs) {
        auto fail = [&](const std::string& what) {
            rep.add(CaseStatus::fail, what + ": " + print_sequent(s, ol_atom_printer));
        };
        std::uint32_t n = height(s);
        bool ok = true;
        for (std::uint32_t b : {n, n + 1, n + 5}) {
            if (!pv.prove(s.gamma, s.omega, s.goal, b).proved()) {
                fail("not provable at bound " + std::to_string(b));
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        std::vector<Atom> wider = s.gamma;
        for (int k = 0; k < 2; ++k) {
            const Atom& a = pool[rng() % pool.size()];
            if (olli)
                wider.insert(wider.begin(), a);
            else
                wider.push_back(a);
        }
        if (!pv.prove(wider, s.omega, s.goal, n).proved()) {
            fail("not provable under a wider context");
            continue;
        }

        // Cut: pick an atomic subgoal A proved in the same context, find the least i with
        // gamma |-i A and the least j with A, gamma |-j G, and demand gamma |-(i+j) G.
        std::vector<const Derivation*> nodes;
        goal_nodes(s, nodes);
        std::vector<const Derivation*> cands;
        for (const auto* d : nodes)
            if (d != &s && d->goal.kind() == GoalKind::atom && d->omega.empty() && same_set(d->gamma, s.gamma))
                cands.push_back(d);
        if (cands.empty() && s.goal.kind() == GoalKind::atom && s.omega.empty()) cands.push_back(&s);
        if (cands.empty()) {
            rep.add(CaseStatus::pass);
            continue;
        }
        const Derivation* d = cands[rng() % cands.size()];
        const Atom& a = d->goal.atom();
        auto i = pv.least(s.gamma, {}, Goal::at(a), height(*d));
        std::vector<Atom> with_a = s.gamma;
        if (olli)
            with_a.insert(with_a.begin(), a);
        else
            with_a.push_back(a);
        auto j = pv.least(with_a, s.omega, s.goal, n);
        if (!i || !j) {
            fail("cut premises are not provable");
            continue;
        }
        if (!pv.prove(s.gamma, s.omega, s.goal, *i + *j).proved()) {
            fail("cut conclusion not provable at bound " + std::to_string(*i + *j));
            continue;
        }
        rep.add(CaseStatus::pass);
    }
    rep.seconds = t.seconds();
    return rep;
}

}  // namespace

std::vector<Derivation> harvest_sequents(const std::vector<Derivation>& proofs, std::size_t n, std::uint64_t seed) {
    std::vector<const Derivation*> nodes;
    for (const auto& p : proofs) goal_nodes(p, nodes);
    std::vector<Derivation> out;
    std::set<std::string> seen;
    for (const auto* d : nodes) {
        Derivation key = *d;
        key.bound = 0;
        std::string k = print_sequent(key, default_atom_printer);
        if (seen.insert(k).second) out.push_back(*d);
    }
    std::mt19937_64 rng(seed);
    std::shuffle(out.begin(), out.end(), rng);
    if (out.size() > n) out.resize(n);
    return out;
}

SuiteReport suite_structural_hh(const std::vector<Derivation>& sequents, std::uint64_t seed) {
    return structural(sequents, seed, false);
}

SuiteReport suite_structural_olli(const std::vector<Derivation>& sequents, std::uint64_t seed) {
    return structural(sequents, seed, true);
}

// ---------------------------------------------------------------------------------------
// subject reduction and the machine

SuiteReport suite_sr_miniml(const std::vector<Expr>& corpus, std::uint32_t bound, std::size_t k, std::uint64_t fuel) {
    Timer t;
    SuiteReport rep;
    rep.suite = "sr-miniml";
    for (const auto& e : corpus) {
        SRReport r = sr_check_instance(e, bound, k, fuel);
        std::string label = show(e) + ": " + r.detail;
        switch (r.status) {
            case SRReport::Status::preserved:
                rep.add(CaseStatus::pass);
                break;
            case SRReport::Status::violated:
                rep.add(CaseStatus::fail, label);
                break;
            case SRReport::Status::inconclusive:
                rep.add(CaseStatus::inconclusive, label);
                break;
            case SRReport::Status::precondition:
                rep.add(CaseStatus::skipped);
                break;
        }
    }
    rep.seconds = t.seconds();
    return rep;
}

SuiteReport suite_machine(const std::vector<Expr>& corpus, std::uint64_t fuel, std::uint32_t bound,
                          std::vector<Derivation>* proofs) {
    Timer t;
    SuiteReport rep;
    rep.suite = "machine";
    for (const auto& e : corpus) {
        std::string label = show(e);
        MachineOutcome mo = machine_run_detailed(e, fuel);
        MetaStore store;
        MetaId v = store.fresh_meta(0);
        SearchConfig cfg;
        cfg.bound = bound;
        SearchResult sl = solutions_olli(db_contmach(), {}, {}, Goal::at(ceval_atom(e, UTerm::mv(v))), store, cfg);
        if (sl.proved()) {
            if (proofs) proofs->push_back(sl.solutions[0].derivation);
            if (mo.value && sl.solutions[0].metas[v] == *mo.value)
                rep.add(CaseStatus::pass);
            else
                rep.add(CaseStatus::fail, label + ": ceval proof disagrees with the machine");
            continue;
        }
        if (mo.status == MachineOutcome::Status::value) {
            if (sl.outcome == Outcome::exhausted)
                rep.add(CaseStatus::inconclusive, label + ": proof search hit bound " + std::to_string(bound));
            else
                rep.add(CaseStatus::fail, label + ": machine answers but no ceval proof exists");
            continue;
        }
        if (mo.status == MachineOutcome::Status::stuck) {
            rep.add(CaseStatus::pass);
            continue;
        }
        rep.add(CaseStatus::inconclusive, label + ": no answer within fuel " + std::to_string(fuel));
    }
    rep.seconds = t.seconds();
    return rep;
}

SuiteReport suite_sr_contmach(const std::vector<Expr>& corpus, std::uint32_t bound, std::uint64_t fuel,
                              std::vector<Derivation>* proofs) {
    Timer t;
    SuiteReport rep;
    rep.suite = "sr-contmach";
    for (const auto& e : corpus) {
        auto ty = ground_principal_type(e);
        if (!ty) {
            rep.add(CaseStatus::skipped);
            continue;
        }
        CMReport r = sr_check_instance_cm(e, *ty, bound, fuel);
        std::string label = show(e) + " : " + print_type(*ty).value_or("?") + ": " + r.detail;
        switch (r.status) {
            case CMReport::Status::preserved:
                rep.add(CaseStatus::pass);
                if (proofs) {
                    MetaStore st;
                    SearchConfig cfg;
                    cfg.bound = bound;
                    auto p = prove_ilist(db_contmach(), {}, {Goal::at(of_atom(*r.value, *ty))}, st, cfg);
                    if (p.proved()) proofs->push_back(p.solutions[0].derivation);
                }
                break;
            case CMReport::Status::violated:
                rep.add(CaseStatus::fail, label);
                break;
            case CMReport::Status::inconclusive:
                rep.add(CaseStatus::inconclusive, label);
                break;
            case CMReport::Status::precondition:
                rep.add(CaseStatus::skipped);
                break;
        }
    }
    rep.seconds = t.seconds();
    return rep;
}

// ---------------------------------------------------------------------------------------
// checker mutations

namespace {

void paths(const Derivation& d, std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    out.push_back(cur);
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        cur.push_back(i);
        paths(d.premises[i], cur, out);
        cur.pop_back();
    }
}

Derivation& at_path(Derivation& d, const std::vector<std::size_t>& p, std::size_t len) {
    Derivation* n = &d;
    for (std::size_t i = 0; i < len; ++i) n = &n->premises[p[i]];
    return *n;
}

std::string path_str(const std::vector<std::size_t>& p) {
    if (p.empty()) return "root";
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "." : "") + std::to_string(p[i]);
    return s;
}

constexpr int kRuleCount = static_cast<int>(Rule::olist_cons) + 1;

}  // namespace

SuiteReport suite_checker(const std::vector<Derivation>& hh, const std::vector<Derivation>& olli,
                          std::size_t mutations, std::uint64_t seed) {
    Timer t;
    SuiteReport rep;
    rep.suite = "checker";
    DatabaseOlli cm = db_contmach();
    auto check = [&](const Derivation& d, bool is_olli) {
        return is_olli ? check_olli(cm, d) : check_hh(db_miniml(), d);
    };
    for (const auto& d : hh) {
        auto c = check(d, false);
        rep.add(c.ok ? CaseStatus::pass : CaseStatus::fail, "hh derivation rejected at " + c.path + ": " + c.message);
    }
    for (const auto& d : olli) {
        auto c = check(d, true);
        rep.add(c.ok ? CaseStatus::pass : CaseStatus::fail, "olli derivation rejected at " + c.path + ": " + c.message);
    }
    std::size_t total = hh.size() + olli.size();
    if (total == 0 || mutations == 0) {
        rep.seconds = t.seconds();
        return rep;
    }
    static const Atom bogus{ConstId::intern("test", "bogus"), {}};
    std::mt19937_64 rng(seed);
    for (std::size_t m = 0; m < mutations; ++m) {
        std::size_t pick = rng() % total;
        bool is_olli = pick >= hh.size();
        Derivation d = is_olli ? olli[pick - hh.size()] : hh[pick];
        std::vector<std::vector<std::size_t>> ps;
        std::vector<std::size_t> cur;
        paths(d, cur, ps);
        std::vector<std::size_t> splits;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (at_path(d, ps[i], ps[i].size()).rule == Rule::olist_cons) splits.push_back(i);

        int kind = static_cast<int>(rng() % 4);
        if (kind == 2 && splits.empty()) kind = 0;
        const auto& p = kind == 2 ? ps[splits[rng() % splits.size()]] : ps[rng() % ps.size()];
        Derivation& node = at_path(d, p, p.size());
        std::string what;
        bool has_parent = !p.empty();
        if (kind == 1 && !has_parent && node.premises.empty()) kind = 0;
        if (kind == 3 && !has_parent) kind = 0;
        switch (kind) {
            case 0: {
                int r = static_cast<int>(node.rule);
                int nr = (r + 1 + static_cast<int>(rng() % (kRuleCount - 1))) % kRuleCount;
                node.rule = static_cast<Rule>(nr);
                what = std::string("rule ") + to_string(static_cast<Rule>(r)) + " -> " + to_string(node.rule);
                break;
            }
            case 1:
                node.bound = has_parent ? at_path(d, p, p.size() - 1).bound : 0;
                what = "height -> " + std::to_string(node.bound);
                break;
            case 2: {
                std::size_t len = node.omega.size() + 1;
                std::size_t ns = len == 1 ? 1 : (node.split + 1 + rng() % (len - 1)) % len;
                what = "split " + std::to_string(node.split) + " -> " + std::to_string(ns);
                node.split = ns;
                break;
            }
            default:
                if (node.gamma.empty()) {
                    node.gamma.push_back(bogus);
                    what = "context atom inserted";
                } else {
                    node.gamma[rng() % node.gamma.size()] = bogus;
                    what = "context atom replaced";
                }
                break;
        }
        auto c = check(d, is_olli);
        if (c.ok)
            rep.add(CaseStatus::fail, "mutation accepted: " + what + " at " + path_str(p));
        else
            rep.add(CaseStatus::pass);
    }
    rep.seconds = t.seconds();
    return rep;
}

// ---------------------------------------------------------------------------------------
// named entry

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n = {"abstraction",     "adequacy", "equivalence", "structural-hh",
                                               "structural-olli", "sr-miniml", "machine",     "sr-contmach",
                                               "checker"};
    return n;
}

SuiteReport run_named_suite(const std::string& name, const SuiteOptions& opts) {
    auto samples = [&](std::size_t dflt) { return opts.samples ? opts.samples : dflt; };
    auto corpus = [&](std::size_t dflt) { return opts.corpus ? *opts.corpus : default_corpus(samples(dflt), opts.seed); };
    if (name == "abstraction") return suite_abstraction(opts.seed, samples(1000));
    if (name == "adequacy") return suite_adequacy(opts.seed, samples(200));
    if (name == "equivalence") return suite_equivalence(corpus(100), 10'000, 60);
    if (name == "sr-miniml") return suite_sr_miniml(corpus(100), 60, 3, 10'000);
    if (name == "machine") return suite_machine(corpus(50), 2'000, 80);
    if (name == "sr-contmach") return suite_sr_contmach(corpus(50), 80, 2'000);
    if (name == "structural-hh") {
        Timer t;
        std::vector<Derivation> proofs;
        std::vector<Expr> c = opts.corpus ? *opts.corpus : default_corpus(100, opts.seed);
        suite_equivalence(c, 10'000, 60, &proofs);
        auto rep = suite_structural_hh(harvest_sequents(proofs, samples(50), opts.seed), opts.seed);
        rep.seconds = t.seconds();
        return rep;
    }
    if (name == "structural-olli") {
        Timer t;
        std::vector<Derivation> proofs;
        std::vector<Expr> c = opts.corpus ? *opts.corpus : default_corpus(50, opts.seed);
        suite_machine(c, 2'000, 80, &proofs);
        suite_sr_contmach(c, 80, 2'000, &proofs);
        auto rep = suite_structural_olli(harvest_sequents(proofs, samples(30), opts.seed), opts.seed);
        rep.seconds = t.seconds();
        return rep;
    }
    if (name == "checker") {
        Timer t;
        std::vector<Derivation> hh, olli;
        std::vector<Expr> c = opts.corpus ? *opts.corpus : default_corpus(30, opts.seed);
        suite_equivalence(c, 10'000, 60, &hh);
        suite_machine(c, 2'000, 80, &olli);
        auto rep = suite_checker(hh, olli, samples(500), opts.seed);
        rep.seconds = t.seconds();
        return rep;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace hybrid
