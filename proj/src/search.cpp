// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// One depth-first engine for both specification logics. Search is written in
// continuation-passing style: every rule calls its continuation once per way of
// closing the current judgment, and a continuation returning true stops the search.

#include <memory>
#include <type_traits>

#include "hybrid/sl_hh.hpp"
#include "hybrid/sl_olli.hpp"

namespace hybrid {
namespace {

template <class>
class FnRef;

template <class R, class... A>
class FnRef<R(A...)> {
   public:
    template <class F>
        requires(!std::is_same_v<std::decay_t<F>, FnRef>)
    FnRef(F&& f)  // NOLINT(google-explicit-constructor)
        : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
          call_([](void* o, A... a) -> R { return (*static_cast<std::remove_reference_t<F>*>(o))(a...); }) {}
    R operator()(A... a) const { return call_(obj_, a...); }

   private:
    void* obj_;
    R (*call_)(void*, A...);
};

using Ctx = std::shared_ptr<const std::vector<Atom>>;
using Goals = std::shared_ptr<const std::vector<Goal>>;

struct SNode;
using SPtr = std::shared_ptr<const SNode>;

struct SNode {
    Rule rule;
    Judgment judgment = Judgment::goal;
    std::uint32_t bound = 0;
    Ctx gamma, omega;
    Goal goal;
    Goals goals;
    std::size_t from = 0;
    std::optional<Expr> eigen;
    std::size_t clause = 0;
    std::vector<MetaId> inst;
    std::size_t split = 0;
    std::vector<SPtr> prem;
};

using K = FnRef<bool(const SPtr&)>;

const Ctx& empty_ctx() {
    static const Ctx e = std::make_shared<const std::vector<Atom>>();
    return e;
}

class Engine {
   public:
    Engine(const DatabaseHH* hh, const DatabaseOlli* olli, MetaStore& store, const SearchConfig& cfg)
        : hh_(hh), olli_(olli), store_(store), cfg_(cfg) {}

    bool hit_bound = false;
    bool out_of_steps = false;
    std::uint64_t steps = 0;

    bool goal(const Goal& g, const Ctx& gamma, const Ctx& omega, std::uint32_t b, K k) {
        if (tick()) return true;
        auto node = [&](Rule r) {
            auto n = std::make_shared<SNode>();
            n->rule = r;
            n->bound = b;
            n->gamma = gamma;
            n->omega = omega;
            n->goal = g;
            return n;
        };
        switch (g.kind()) {
            case GoalKind::tt:
                return k(node(Rule::tt_r));
            case GoalKind::atom:
                return atom(g, gamma, omega, b, k);
            case GoalKind::conj: {
                if (b == 0) return cut();
                return goal(g.left(), gamma, omega, b - 1, [&](const SPtr& d1) {
                    return goal(g.right(), gamma, omega, b - 1, [&](const SPtr& d2) {
                        auto n = node(Rule::and_r);
                        n->prem = {d1, d2};
                        return k(n);
                    });
                });
            }
            case GoalKind::imp: {
                if (b == 0) return cut();
                Ctx g2 = extend_gamma(gamma, g.atom());
                return goal(g.body(), g2, omega, b - 1, [&](const SPtr& d) {
                    auto n = node(Rule::imp_r);
                    n->prem = {d};
                    return k(n);
                });
            }
            case GoalKind::ord_imp: {
                if (!olli_) throw std::invalid_argument("ordered implication in a hereditary Harrop goal");
                if (b == 0) return cut();
                auto o2 = std::make_shared<std::vector<Atom>>(*omega);
                o2->push_back(g.atom());
                Ctx om2 = std::move(o2);
                return goal(g.body(), gamma, om2, b - 1, [&](const SPtr& d) {
                    auto n = node(Rule::ord_imp_r);
                    n->prem = {d};
                    return k(n);
                });
            }
            case GoalKind::all: {
                if (b == 0) return cut();
                std::size_t mk = store_.mark();
                Expr x = store_.fresh_eigen();
                Goal inst = instantiate_all(g.body(), x);
                bool stop = goal(inst, gamma, omega, b - 1, [&](const SPtr& d) {
                    auto n = node(Rule::all_r);
                    n->eigen = x;
                    n->prem = {d};
                    return k(n);
                });
                if (!stop) store_.undo(mk);
                return stop;
            }
        }
        return false;
    }

    bool ilist(const Goals& gs, std::size_t from, const Ctx& gamma, std::uint32_t b, K k) {
        if (tick()) return true;
        auto node = [&](Rule r) {
            auto n = std::make_shared<SNode>();
            n->rule = r;
            n->judgment = Judgment::ilist;
            n->bound = b;
            n->gamma = gamma;
            n->omega = empty_ctx();
            n->goals = gs;
            n->from = from;
            return n;
        };
        if (from == gs->size()) return k(node(Rule::ilist_nil));
        if (b == 0) return cut();
        return goal((*gs)[from], gamma, empty_ctx(), b - 1, [&](const SPtr& d1) {
            return ilist(gs, from + 1, gamma, b - 1, [&](const SPtr& d2) {
                auto n = node(Rule::ilist_cons);
                n->prem = {d1, d2};
                return k(n);
            });
        });
    }

    bool olist(const Goals& gs, std::size_t from, const Ctx& gamma, const Ctx& omega, std::uint32_t b, K k) {
        if (tick()) return true;
        auto node = [&](Rule r) {
            auto n = std::make_shared<SNode>();
            n->rule = r;
            n->judgment = Judgment::olist;
            n->bound = b;
            n->gamma = gamma;
            n->omega = omega;
            n->goals = gs;
            n->from = from;
            return n;
        };
        if (from == gs->size()) {
            if (!omega->empty()) return false;
            return k(node(Rule::olist_nil));
        }
        if (b == 0) return cut();
        // With one goal left the tail must receive an empty prefix.
        std::size_t last = from + 1 == gs->size() ? 0 : omega->size();
        for (std::size_t split = 0; split <= last; ++split) {
            Ctx pre = std::make_shared<const std::vector<Atom>>(omega->begin(), omega->begin() + split);
            Ctx suf = std::make_shared<const std::vector<Atom>>(omega->begin() + split, omega->end());
            bool stop = goal((*gs)[from], gamma, suf, b - 1, [&](const SPtr& d1) {
                return olist(gs, from + 1, gamma, pre, b - 1, [&](const SPtr& d2) {
                    auto n = node(Rule::olist_cons);
                    n->split = split;
                    n->prem = {d1, d2};
                    return k(n);
                });
            });
            if (stop) return true;
        }
        return false;
    }

   private:
    const DatabaseHH* hh_;
    const DatabaseOlli* olli_;
    MetaStore& store_;
    const SearchConfig& cfg_;

    bool tick() {
        if (++steps > cfg_.step_limit) {
            out_of_steps = true;
            return true;
        }
        return false;
    }

    bool cut() {
        hit_bound = true;
        return false;
    }

    Ctx extend_gamma(const Ctx& gamma, const Atom& a) {
        auto g = std::make_shared<std::vector<Atom>>();
        if (olli_) {
            g->reserve(gamma->size() + 1);
            g->push_back(a);
            g->insert(g->end(), gamma->begin(), gamma->end());
            return g;
        }
        // Set semantics: adding an atom already present is a no-op.
        Atom ra = resolve_atom(a);
        for (const auto& c : *gamma)
            if (resolve_atom(c) == ra) return gamma;
        *g = *gamma;
        g->push_back(a);
        return g;
    }

    Atom resolve_atom(const Atom& a) const {
        return map_terms(a, [&](const UTerm& t) { return resolve(t, store_); });
    }

    UnifyStatus unify_atoms(const Atom& a, const Atom& b) {
        if (a.pred != b.pred || a.args.size() != b.args.size()) return UnifyStatus::clash;
        std::size_t mk = store_.mark();
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            UnifyStatus s = unify(a.args[i], b.args[i], store_);
            if (s != UnifyStatus::ok) {
                store_.undo(mk);
                return s;
            }
        }
        return UnifyStatus::ok;
    }

    bool atom(const Goal& g, const Ctx& gamma, const Ctx& omega, std::uint32_t b, K k) {
        const Atom& a = g.atom();
        auto node = [&](Rule r) {
            auto n = std::make_shared<SNode>();
            n->rule = r;
            n->bound = b;
            n->gamma = gamma;
            n->omega = omega;
            n->goal = g;
            return n;
        };
        auto try_init = [&](const Atom& h, Rule r) {
            std::size_t mk = store_.mark();
            if (unify_atoms(a, h) != UnifyStatus::ok) return false;
            if (k(node(r))) return true;
            store_.undo(mk);
            return false;
        };
        if (olli_) {
            if (omega->size() == 1 && try_init((*omega)[0], Rule::init_omega)) return true;
            if (omega->empty())
                for (const auto& h : *gamma)
                    if (try_init(h, Rule::init_gamma)) return true;
        } else {
            for (const auto& h : *gamma)
                if (try_init(h, Rule::init)) return true;
        }
        std::size_t n_clauses = olli_ ? olli_->clauses.size() : hh_->clauses.size();
        for (std::size_t ci = 0; ci < n_clauses; ++ci) {
            const Atom& head = olli_ ? olli_->clauses[ci].head : hh_->clauses[ci].head;
            if (head.pred != a.pred) continue;
            std::size_t mk = store_.mark();
            std::vector<MetaId> ids;
            bool stop = false;
            if (olli_) {
                ClauseOlli c = freshen_clause(olli_->clauses[ci], store_, &ids);
                if (unify_atoms(a, c.head) == UnifyStatus::ok) {
                    if (b == 0) {
                        cut();
                    } else {
                        auto og = std::make_shared<const std::vector<Goal>>(std::move(c.ordered));
                        auto ig = std::make_shared<const std::vector<Goal>>(std::move(c.intuit));
                        stop = olist(og, 0, gamma, omega, b - 1, [&](const SPtr& d1) {
                            return ilist(ig, 0, gamma, b - 1, [&](const SPtr& d2) {
                                auto n = node(Rule::bc);
                                n->clause = ci;
                                n->inst = ids;
                                n->prem = {d1, d2};
                                return k(n);
                            });
                        });
                    }
                }
            } else {
                ClauseHH c = freshen_clause(hh_->clauses[ci], store_, &ids);
                if (unify_atoms(a, c.head) == UnifyStatus::ok) {
                    if (b == 0) {
                        cut();
                    } else {
                        stop = goal(c.body, gamma, omega, b - 1, [&](const SPtr& d) {
                            auto n = node(Rule::bc);
                            n->clause = ci;
                            n->inst = ids;
                            n->prem = {d};
                            return k(n);
                        });
                    }
                }
            }
            if (stop) return true;
            store_.undo(mk);
        }
        return false;
    }
};

// Replaces unbound metas by the database default after full resolution.
struct Grounder {
    const MetaStore& store;
    Expr def;

    UTerm fill(const UTerm& t) const {
        if (t.ground()) return t;
        switch (t.kind()) {
            case NodeKind::mv:
            case NodeKind::mapp:
                return def;
            case NodeKind::app:
                return UTerm::app(fill(t.left()), fill(t.right()));
            case NodeKind::abs:
                return UTerm::abs(fill(t.left()));
            default:
                return t;
        }
    }

    UTerm term(const UTerm& t) const { return fill(resolve(t, store)); }

    Atom atom(const Atom& a) const {
        return map_terms(a, [&](const UTerm& t) { return term(t); });
    }

    Goal goal(const Goal& g) const {
        return map_terms(g, [&](const UTerm& t, std::uint32_t) { return term(t); });
    }

    std::vector<Atom> atoms(const Ctx& c) const {
        std::vector<Atom> out;
        for (const auto& a : *c) out.push_back(atom(a));
        return out;
    }

    Expr meta_value(MetaId m) const {
        const auto& mi = store.info(m);
        if (!mi.binding) return def;
        return term(*mi.binding).expr();
    }

    Derivation derivation(const SNode& n, const std::vector<std::string>& names) const {
        Derivation d;
        d.rule = n.rule;
        d.judgment = n.judgment;
        d.bound = n.bound;
        d.gamma = atoms(n.gamma);
        d.omega = atoms(n.omega);
        if (n.judgment == Judgment::goal) {
            d.goal = goal(n.goal);
        } else {
            for (std::size_t i = n.from; i < n.goals->size(); ++i) d.goals.push_back(goal((*n.goals)[i]));
        }
        d.eigen = n.eigen;
        d.clause = n.clause;
        if (n.rule == Rule::bc) d.clause_name = names.at(n.clause);
        for (MetaId m : n.inst) d.inst.push_back(meta_value(m));
        d.split = n.split;
        for (const auto& p : n.prem) d.premises.push_back(derivation(*p, names));
        return d;
    }
};

struct Query {
    const DatabaseHH* hh = nullptr;
    const DatabaseOlli* olli = nullptr;
    std::vector<Atom> gamma, omega;
    enum class Kind { goal, ilist, olist } kind = Kind::goal;
    Goal goal;
    std::vector<Goal> goals;
};

std::uint32_t query_var_limit(const Query& q) {
    std::uint32_t m = 0;
    for (const auto& a : q.gamma) m = std::max(m, var_limit(a));
    for (const auto& a : q.omega) m = std::max(m, var_limit(a));
    m = std::max(m, var_limit(q.goal));
    for (const auto& g : q.goals) m = std::max(m, var_limit(g));
    return m;
}

// Runs the search at one bound, collecting up to cfg.max_solutions solutions.
SearchResult run_at(const Query& q, MetaStore& store, const SearchConfig& cfg, std::uint32_t bound) {
    SearchResult res;
    std::size_t n_query = store.size();
    std::size_t mk = store.mark();
    store.reserve_eigen(query_var_limit(q));
    Engine eng(q.hh, q.olli, store, cfg);
    Expr def = q.olli ? q.olli->ground_default : q.hh->ground_default;
    std::vector<std::string> names;
    if (q.olli)
        for (const auto& c : q.olli->clauses) names.push_back(c.name);
    else
        for (const auto& c : q.hh->clauses) names.push_back(c.name);
    auto on_solution = [&](const SPtr& d) {
        Grounder gr{store, def};
        Solution s;
        for (MetaId m = 0; m < n_query; ++m) s.metas.push_back(gr.meta_value(m));
        s.derivation = gr.derivation(*d, names);
        res.solutions.push_back(std::move(s));
        return res.solutions.size() >= cfg.max_solutions;
    };
    Ctx gamma = std::make_shared<const std::vector<Atom>>(q.gamma);
    Ctx omega = std::make_shared<const std::vector<Atom>>(q.omega);
    try {
        switch (q.kind) {
            case Query::Kind::goal:
                eng.goal(q.goal, gamma, omega, bound, on_solution);
                break;
            case Query::Kind::ilist:
                eng.ilist(std::make_shared<const std::vector<Goal>>(q.goals), 0, gamma, bound, on_solution);
                break;
            case Query::Kind::olist:
                eng.olist(std::make_shared<const std::vector<Goal>>(q.goals), 0, gamma, omega, bound, on_solution);
                break;
        }
    } catch (...) {
        store.undo(mk);
        throw;
    }
    store.undo(mk);
    res.steps = eng.steps;
    if (!res.solutions.empty())
        res.outcome = Outcome::proved;
    else if (eng.hit_bound || eng.out_of_steps)
        res.outcome = Outcome::exhausted;
    else
        res.outcome = Outcome::failed;
    return res;
}

SearchResult run(const Query& q, MetaStore& store, const SearchConfig& cfg) {
    if (cfg.max_solutions == 0) throw std::invalid_argument("max_solutions must be positive");
    if (cfg.strategy == Strategy::dfs) return run_at(q, store, cfg, cfg.bound);
    SearchResult last;
    std::uint64_t steps = 0;
    for (std::uint32_t b = 0; b <= cfg.bound; ++b) {
        last = run_at(q, store, cfg, b);
        steps += last.steps;
        // A failure without any cut is final; so is a full set of solutions.
        if (last.outcome == Outcome::failed || last.solutions.size() >= cfg.max_solutions) break;
    }
    last.steps = steps;
    return last;
}

void commit_first(const SearchResult& r, MetaStore& store) {
    if (!r.proved()) return;
    const auto& vals = r.solutions.front().metas;
    for (MetaId m = 0; m < vals.size(); ++m)
        if (!store.info(m).binding) store.bind(m, vals[m]);
}

}  // namespace

SearchResult prove_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, const Goal& goal, MetaStore& store,
                      const SearchConfig& cfg) {
    SearchResult r = solutions_hh(db, ctx, goal, store, cfg);
    commit_first(r, store);
    return r;
}

SearchResult prove_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, std::uint32_t bound, const Goal& goal,
                      MetaStore& store) {
    SearchConfig cfg;
    cfg.bound = bound;
    return prove_hh(db, ctx, goal, store, cfg);
}

SearchResult solutions_hh(const DatabaseHH& db, const std::vector<Atom>& ctx, const Goal& goal,
                          MetaStore& store, const SearchConfig& cfg) {
    Query q;
    q.hh = &db;
    q.gamma = ctx;
    q.goal = goal;
    return run(q, store, cfg);
}

SearchResult solutions_olli(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                            const Goal& goal, MetaStore& store, const SearchConfig& cfg) {
    Query q;
    q.olli = &db;
    q.gamma = gamma;
    q.omega = omega;
    q.goal = goal;
    return run(q, store, cfg);
}

SearchResult prove_olli(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                        const Goal& goal, MetaStore& store, const SearchConfig& cfg) {
    SearchResult r = solutions_olli(db, gamma, omega, goal, store, cfg);
    commit_first(r, store);
    return r;
}

SearchResult prove_olist(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Atom>& omega,
                         const std::vector<Goal>& goals, MetaStore& store, const SearchConfig& cfg) {
    Query q;
    q.olli = &db;
    q.kind = Query::Kind::olist;
    q.gamma = gamma;
    q.omega = omega;
    q.goals = goals;
    SearchResult r = run(q, store, cfg);
    commit_first(r, store);
    return r;
}

SearchResult prove_ilist(const DatabaseOlli& db, const std::vector<Atom>& gamma, const std::vector<Goal>& goals,
                         MetaStore& store, const SearchConfig& cfg) {
    Query q;
    q.olli = &db;
    q.kind = Query::Kind::ilist;
    q.gamma = gamma;
    q.goals = goals;
    SearchResult r = run(q, store, cfg);
    commit_first(r, store);
    return r;
}

DatabaseOlli to_olli(const DatabaseHH& db) {
    DatabaseOlli out;
    out.name = db.name;
    out.ground_default = db.ground_default;
    for (const auto& c : db.clauses) out.clauses.push_back(ClauseOlli{c.name, c.vars, c.head, {}, {c.body}});
    return out;
}

}  // namespace hybrid
