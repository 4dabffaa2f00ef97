// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// Independent replay of ground derivations. Nothing here calls the search engine or
// the unifier; clause instances are rebuilt by plain substitution and compared.

#include <algorithm>

#include "hybrid/sl_hh.hpp"
#include "hybrid/sl_olli.hpp"

namespace hybrid {
namespace {

struct Fail {
    std::string message;
};

bool member(const Atom& a, const std::vector<Atom>& xs) { return std::find(xs.begin(), xs.end(), a) != xs.end(); }

bool same_set(const std::vector<Atom>& a, const std::vector<Atom>& b) {
    for (const auto& x : a)
        if (!member(x, b)) return false;
    for (const auto& x : b)
        if (!member(x, a)) return false;
    return true;
}

class Checker {
   public:
    Checker(const DatabaseHH* hh, const DatabaseOlli* olli) : hh_(hh), olli_(olli) {}

    CheckResult run(const Derivation& d) {
        std::string path;
        try {
            node(d, path);
        } catch (const Fail& f) {
            return CheckResult{false, path_, f.message};
        }
        return {};
    }

   private:
    const DatabaseHH* hh_;
    const DatabaseOlli* olli_;
    std::string path_;

    [[noreturn]] void fail(const std::string& path, const std::string& msg) {
        path_ = path.empty() ? "root" : path;
        throw Fail{msg};
    }

    void require(bool cond, const std::string& path, const std::string& msg) {
        if (!cond) fail(path, msg);
    }

    void ground_node(const Derivation& d, const std::string& path) {
        for (const auto& a : d.gamma) require(ground(a), path, "context atom has metavariables");
        for (const auto& a : d.omega) require(ground(a), path, "ordered atom has metavariables");
        for (const auto& a : d.gamma)
            for (const auto& t : a.args) require(t.loose() == 0, path, "context atom is not proper");
        for (const auto& a : d.omega)
            for (const auto& t : a.args) require(t.loose() == 0, path, "ordered atom is not proper");
        if (d.judgment == Judgment::goal) require(ground(d.goal), path, "goal has metavariables");
        for (const auto& g : d.goals) require(ground(g), path, "goal has metavariables");
    }

    void premises(const Derivation& d, std::size_t n, const std::string& path) {
        require(d.premises.size() == n, path,
                std::string(to_string(d.rule)) + " expects " + std::to_string(n) + " premises");
        for (const auto& p : d.premises) require(p.bound < d.bound, path, "premise height does not decrease");
    }

    void same_gamma(const Derivation& p, const std::vector<Atom>& want, const std::string& path) {
        bool ok = olli_ ? p.gamma == want : same_set(p.gamma, want);
        require(ok, path, "premise context differs from the rule's");
    }

    void premise_goal(const Derivation& p, const Goal& g, const std::vector<Atom>& gamma,
                      const std::vector<Atom>& omega, const std::string& path) {
        require(p.judgment == Judgment::goal, path, "premise has the wrong judgment");
        same_gamma(p, gamma, path);
        require(p.omega == omega, path, "premise ordered context differs from the rule's");
        require(p.goal == g, path, "premise goal differs from the rule's");
    }

    void premise_list(const Derivation& p, Judgment j, const std::vector<Goal>& gs, const std::vector<Atom>& gamma,
                      const std::vector<Atom>& omega, const std::string& path) {
        require(p.judgment == j, path, "premise has the wrong judgment");
        same_gamma(p, gamma, path);
        require(p.omega == omega, path, "premise ordered context differs from the rule's");
        require(p.goals == gs, path, "premise goal list differs from the rule's");
    }

    std::vector<UTerm> instantiation(const Derivation& d, const std::vector<VarDecl>& vars, const std::string& path) {
        require(d.inst.size() == vars.size(), path, "instantiation has the wrong length");
        std::vector<UTerm> vals;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (vars[i].arity == 0)
                require(proper(d.inst[i]), path, "instance of " + vars[i].name + " is not proper");
            else
                require(abstr(Abstraction{d.inst[i]}), path, "instance of " + vars[i].name + " is not an abstraction");
            vals.emplace_back(d.inst[i]);
        }
        return vals;
    }

    static Atom inst_atom(const Atom& a, const std::vector<UTerm>& vals) {
        return map_terms(a, [&](const UTerm& t) { return apply_instantiation(t, vals); });
    }

    static Goal inst_goal(const Goal& g, const std::vector<UTerm>& vals) {
        return map_terms(g, [&](const UTerm& t, std::uint32_t) { return apply_instantiation(t, vals); });
    }

    void node(const Derivation& d, const std::string& path) {
        ground_node(d, path);
        if (!olli_) {
            require(d.judgment == Judgment::goal, path, "list judgment in a hereditary Harrop derivation");
            require(d.omega.empty(), path, "ordered context in a hereditary Harrop derivation");
        }
        const Goal& g = d.goal;
        auto goal_kind = [&](GoalKind k) {
            require(d.judgment == Judgment::goal && g.kind() == k, path,
                    std::string(to_string(d.rule)) + " does not match the goal");
        };
        switch (d.rule) {
            case Rule::tt_r:
                goal_kind(GoalKind::tt);
                premises(d, 0, path);
                break;
            case Rule::init:
                require(!olli_, path, "init is not an ordered rule");
                goal_kind(GoalKind::atom);
                premises(d, 0, path);
                require(member(g.atom(), d.gamma), path, "init atom is not in the context");
                break;
            case Rule::init_omega:
                require(olli_ != nullptr, path, "init_omega outside the ordered logic");
                goal_kind(GoalKind::atom);
                premises(d, 0, path);
                require(d.omega.size() == 1 && d.omega[0] == g.atom(), path,
                        "init_omega needs the ordered context to be exactly the goal atom");
                break;
            case Rule::init_gamma:
                require(olli_ != nullptr, path, "init_gamma outside the ordered logic");
                goal_kind(GoalKind::atom);
                premises(d, 0, path);
                require(d.omega.empty(), path, "init_gamma with unconsumed ordered atoms");
                require(member(g.atom(), d.gamma), path, "init_gamma atom is not in the context");
                break;
            case Rule::and_r:
                goal_kind(GoalKind::conj);
                premises(d, 2, path);
                premise_goal(d.premises[0], g.left(), d.gamma, d.omega, path);
                premise_goal(d.premises[1], g.right(), d.gamma, d.omega, path);
                break;
            case Rule::imp_r: {
                goal_kind(GoalKind::imp);
                premises(d, 1, path);
                std::vector<Atom> g2;
                if (olli_) {
                    g2.push_back(g.atom());
                    g2.insert(g2.end(), d.gamma.begin(), d.gamma.end());
                } else {
                    g2 = d.gamma;
                    if (!member(g.atom(), g2)) g2.push_back(g.atom());
                }
                premise_goal(d.premises[0], g.body(), g2, d.omega, path);
                break;
            }
            case Rule::ord_imp_r: {
                require(olli_ != nullptr, path, "ordered implication outside the ordered logic");
                goal_kind(GoalKind::ord_imp);
                premises(d, 1, path);
                std::vector<Atom> o2 = d.omega;
                o2.push_back(g.atom());
                premise_goal(d.premises[0], g.body(), d.gamma, o2, path);
                break;
            }
            case Rule::all_r: {
                goal_kind(GoalKind::all);
                premises(d, 1, path);
                require(d.eigen.has_value() && d.eigen->is(ExprKind::var), path, "all_r needs an eigenvariable");
                std::uint32_t x = d.eigen->index();
                bool fresh = !occurs_var(x, g);
                for (const auto& a : d.gamma) fresh = fresh && !occurs_var(x, a);
                for (const auto& a : d.omega) fresh = fresh && !occurs_var(x, a);
                require(fresh, path, "eigenvariable is not fresh");
                premise_goal(d.premises[0], instantiate_all(g.body(), *d.eigen), d.gamma, d.omega, path);
                break;
            }
            case Rule::bc:
                goal_kind(GoalKind::atom);
                if (olli_) {
                    require(d.clause < olli_->clauses.size(), path, "bc cites an unknown clause");
                    const ClauseOlli& c = olli_->clauses[d.clause];
                    auto vals = instantiation(d, c.vars, path);
                    require(inst_atom(c.head, vals) == g.atom(), path, "clause head does not match the goal");
                    premises(d, 2, path);
                    std::vector<Goal> og, ig;
                    for (const auto& x : c.ordered) og.push_back(inst_goal(x, vals));
                    for (const auto& x : c.intuit) ig.push_back(inst_goal(x, vals));
                    premise_list(d.premises[0], Judgment::olist, og, d.gamma, d.omega, path);
                    premise_list(d.premises[1], Judgment::ilist, ig, d.gamma, {}, path);
                } else {
                    require(d.clause < hh_->clauses.size(), path, "bc cites an unknown clause");
                    const ClauseHH& c = hh_->clauses[d.clause];
                    auto vals = instantiation(d, c.vars, path);
                    require(inst_atom(c.head, vals) == g.atom(), path, "clause head does not match the goal");
                    premises(d, 1, path);
                    premise_goal(d.premises[0], inst_goal(c.body, vals), d.gamma, d.omega, path);
                }
                break;
            case Rule::ilist_nil:
                require(d.judgment == Judgment::ilist && d.goals.empty(), path, "ilist_nil needs an empty list");
                require(d.omega.empty(), path, "ilist judgment with an ordered context");
                premises(d, 0, path);
                break;
            case Rule::ilist_cons: {
                require(d.judgment == Judgment::ilist && !d.goals.empty(), path, "ilist_cons needs a goal");
                require(d.omega.empty(), path, "ilist judgment with an ordered context");
                premises(d, 2, path);
                premise_goal(d.premises[0], d.goals[0], d.gamma, {}, path);
                std::vector<Goal> rest(d.goals.begin() + 1, d.goals.end());
                premise_list(d.premises[1], Judgment::ilist, rest, d.gamma, {}, path);
                break;
            }
            case Rule::olist_nil:
                require(d.judgment == Judgment::olist && d.goals.empty(), path, "olist_nil needs an empty list");
                require(d.omega.empty(), path, "olist_nil with unconsumed ordered atoms");
                premises(d, 0, path);
                break;
            case Rule::olist_cons: {
                require(d.judgment == Judgment::olist && !d.goals.empty(), path, "olist_cons needs a goal");
                require(d.split <= d.omega.size(), path, "split point beyond the ordered context");
                premises(d, 2, path);
                std::vector<Atom> pre(d.omega.begin(), d.omega.begin() + d.split);
                std::vector<Atom> suf(d.omega.begin() + d.split, d.omega.end());
                premise_goal(d.premises[0], d.goals[0], d.gamma, suf, path);
                std::vector<Goal> rest(d.goals.begin() + 1, d.goals.end());
                premise_list(d.premises[1], Judgment::olist, rest, d.gamma, pre, path);
                break;
            }
        }
        for (std::size_t i = 0; i < d.premises.size(); ++i)
            node(d.premises[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i));
    }
};

}  // namespace

CheckResult check_hh(const DatabaseHH& db, const Derivation& d) { return Checker(&db, nullptr).run(d); }

CheckResult check_olli(const DatabaseOlli& db, const Derivation& d) { return Checker(nullptr, &db).run(d); }

}  // namespace hybrid
