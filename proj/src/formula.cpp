// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/formula.hpp"

#include <algorithm>
#include <sstream>

namespace hybrid {

Goal Goal::tt() { return Goal(); }

Goal Goal::at(Atom a) {
    Goal g;
    g.kind_ = GoalKind::atom;
    g.atom_ = std::move(a);
    return g;
}

Goal Goal::conj(Goal a, Goal b) {
    Goal g;
    g.kind_ = GoalKind::conj;
    g.a_ = std::make_shared<const Goal>(std::move(a));
    g.b_ = std::make_shared<const Goal>(std::move(b));
    return g;
}

Goal Goal::imp(Atom a, Goal body) {
    Goal g;
    g.kind_ = GoalKind::imp;
    g.atom_ = std::move(a);
    g.a_ = std::make_shared<const Goal>(std::move(body));
    return g;
}

Goal Goal::ord_imp(Atom a, Goal body) {
    Goal g;
    g.kind_ = GoalKind::ord_imp;
    g.atom_ = std::move(a);
    g.a_ = std::make_shared<const Goal>(std::move(body));
    return g;
}

Goal Goal::all(Goal body) {
    Goal g;
    g.kind_ = GoalKind::all;
    g.a_ = std::make_shared<const Goal>(std::move(body));
    return g;
}

bool operator==(const Goal& a, const Goal& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case GoalKind::tt:
            return true;
        case GoalKind::atom:
            return a.atom_ == b.atom_;
        case GoalKind::conj:
            return *a.a_ == *b.a_ && *a.b_ == *b.b_;
        case GoalKind::imp:
        case GoalKind::ord_imp:
            return a.atom_ == b.atom_ && *a.a_ == *b.a_;
        case GoalKind::all:
            return *a.a_ == *b.a_;
    }
    return false;
}

Atom map_terms(const Atom& a, const std::function<UTerm(const UTerm&)>& f) {
    Atom out{a.pred, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(f(t));
    return out;
}

namespace {

Goal map_at(const Goal& g, const std::function<UTerm(const UTerm&, std::uint32_t)>& f, std::uint32_t k) {
    auto fa = [&](const Atom& a) { return map_terms(a, [&](const UTerm& t) { return f(t, k); }); };
    switch (g.kind()) {
        case GoalKind::tt:
            return g;
        case GoalKind::atom:
            return Goal::at(fa(g.atom()));
        case GoalKind::conj:
            return Goal::conj(map_at(g.left(), f, k), map_at(g.right(), f, k));
        case GoalKind::imp:
            return Goal::imp(fa(g.atom()), map_at(g.body(), f, k));
        case GoalKind::ord_imp:
            return Goal::ord_imp(fa(g.atom()), map_at(g.body(), f, k));
        case GoalKind::all:
            return Goal::all(map_at(g.body(), f, k + 1));
    }
    return g;
}

template <class F>
bool any_atom(const Goal& g, F&& f) {
    switch (g.kind()) {
        case GoalKind::tt:
            return false;
        case GoalKind::atom:
            return f(g.atom());
        case GoalKind::conj:
            return any_atom(g.left(), f) || any_atom(g.right(), f);
        case GoalKind::imp:
        case GoalKind::ord_imp:
            return f(g.atom()) || any_atom(g.body(), f);
        case GoalKind::all:
            return any_atom(g.body(), f);
    }
    return false;
}

bool occurs_var_term(std::uint32_t n, const UTerm& t) {
    if (t.var_limit() <= n) return false;
    switch (t.kind()) {
        case NodeKind::var:
            return t.value() == n;
        case NodeKind::app:
            return occurs_var_term(n, t.left()) || occurs_var_term(n, t.right());
        case NodeKind::abs:
        case NodeKind::mapp:
            return occurs_var_term(n, t.left());
        default:
            return false;
    }
}

}  // namespace

Goal map_terms(const Goal& g, const std::function<UTerm(const UTerm&, std::uint32_t)>& f) {
    return map_at(g, f, 0);
}

Goal instantiate_all(const Goal& body, const UTerm& t) {
    return map_terms(body, [&](const UTerm& u, std::uint32_t k) { return subst(u, k, t); });
}

bool ground(const Atom& a) {
    return std::all_of(a.args.begin(), a.args.end(), [](const UTerm& t) { return t.ground(); });
}

bool ground(const Goal& g) {
    return !any_atom(g, [](const Atom& a) { return !ground(a); });
}

std::uint32_t var_limit(const Atom& a) {
    std::uint32_t m = 0;
    for (const auto& t : a.args) m = std::max(m, t.var_limit());
    return m;
}

std::uint32_t var_limit(const Goal& g) {
    std::uint32_t m = 0;
    any_atom(g, [&](const Atom& a) {
        m = std::max(m, var_limit(a));
        return false;
    });
    return m;
}

bool occurs_var(std::uint32_t n, const Atom& a) {
    return std::any_of(a.args.begin(), a.args.end(), [&](const UTerm& t) { return occurs_var_term(n, t); });
}

bool occurs_var(std::uint32_t n, const Goal& g) {
    return any_atom(g, [&](const Atom& a) { return occurs_var(n, a); });
}

namespace {

void check_term(const UTerm& t, const std::vector<VarDecl>& vars, const std::string& where) {
    if (t.ground()) return;
    switch (t.kind()) {
        case NodeKind::mv:
            if (t.value() >= vars.size()) throw std::invalid_argument(where + ": unknown clause variable");
            if (vars[t.value()].arity != 0)
                throw std::invalid_argument(where + ": abstraction variable " + vars[t.value()].name +
                                            " used without an argument");
            return;
        case NodeKind::mapp:
            if (t.value() >= vars.size()) throw std::invalid_argument(where + ": unknown clause variable");
            if (vars[t.value()].arity != 1)
                throw std::invalid_argument(where + ": term variable " + vars[t.value()].name +
                                            " applied to an argument");
            check_term(t.left(), vars, where);
            return;
        case NodeKind::app:
            check_term(t.left(), vars, where);
            check_term(t.right(), vars, where);
            return;
        case NodeKind::abs:
            check_term(t.left(), vars, where);
            return;
        default:
            return;
    }
}

void check_atom(const Atom& a, const std::vector<VarDecl>& vars, std::uint32_t depth, const std::string& where) {
    for (const auto& t : a.args) {
        check_term(t, vars, where);
        if (t.loose() > depth) throw std::invalid_argument(where + ": dangling bound index");
    }
}

void check_goal(const Goal& g, const std::vector<VarDecl>& vars, std::uint32_t depth, bool allow_ord,
                const std::string& where) {
    switch (g.kind()) {
        case GoalKind::tt:
            return;
        case GoalKind::atom:
            check_atom(g.atom(), vars, depth, where);
            return;
        case GoalKind::conj:
            check_goal(g.left(), vars, depth, allow_ord, where);
            check_goal(g.right(), vars, depth, allow_ord, where);
            return;
        case GoalKind::ord_imp:
            if (!allow_ord) throw std::invalid_argument(where + ": ordered implication in a hereditary Harrop clause");
            [[fallthrough]];
        case GoalKind::imp:
            check_atom(g.atom(), vars, depth, where);
            check_goal(g.body(), vars, depth, allow_ord, where);
            return;
        case GoalKind::all:
            check_goal(g.body(), vars, depth + 1, allow_ord, where);
            return;
    }
}

}  // namespace

void DatabaseHH::validate() const {
    for (const auto& c : clauses) {
        std::string where = name + "/" + c.name;
        check_atom(c.head, c.vars, 0, where);
        check_goal(c.body, c.vars, 0, false, where);
    }
    if (!proper(ground_default)) throw std::invalid_argument(name + ": ground default must be proper");
}

void DatabaseOlli::validate() const {
    for (const auto& c : clauses) {
        std::string where = name + "/" + c.name;
        check_atom(c.head, c.vars, 0, where);
        for (const auto& g : c.ordered) check_goal(g, c.vars, 0, true, where);
        for (const auto& g : c.intuit) check_goal(g, c.vars, 0, true, where);
    }
    if (!proper(ground_default)) throw std::invalid_argument(name + ": ground default must be proper");
}

std::vector<MetaId> freshen_vars(const std::vector<VarDecl>& vars, MetaStore& store) {
    std::vector<MetaId> ids;
    ids.reserve(vars.size());
    for (const auto& v : vars) ids.push_back(store.fresh_meta(v.arity));
    return ids;
}

namespace {

Goal rename_goal(const Goal& g, const std::vector<MetaId>& ids) {
    return map_terms(g, [&](const UTerm& t, std::uint32_t) { return rename_metas(t, ids); });
}

Atom rename_atom(const Atom& a, const std::vector<MetaId>& ids) {
    return map_terms(a, [&](const UTerm& t) { return rename_metas(t, ids); });
}

}  // namespace

ClauseHH freshen_clause(const ClauseHH& c, MetaStore& store, std::vector<MetaId>* out) {
    auto ids = freshen_vars(c.vars, store);
    ClauseHH r{c.name, c.vars, rename_atom(c.head, ids), rename_goal(c.body, ids)};
    if (out) *out = std::move(ids);
    return r;
}

ClauseOlli freshen_clause(const ClauseOlli& c, MetaStore& store, std::vector<MetaId>* out) {
    auto ids = freshen_vars(c.vars, store);
    ClauseOlli r{c.name, c.vars, rename_atom(c.head, ids), {}, {}};
    for (const auto& g : c.ordered) r.ordered.push_back(rename_goal(g, ids));
    for (const auto& g : c.intuit) r.intuit.push_back(rename_goal(g, ids));
    if (out) *out = std::move(ids);
    return r;
}

const char* to_string(Rule r) {
    switch (r) {
        case Rule::tt_r:
            return "tt_r";
        case Rule::and_r:
            return "and_r";
        case Rule::all_r:
            return "all_r";
        case Rule::imp_r:
            return "imp_r";
        case Rule::ord_imp_r:
            return "ord_imp_r";
        case Rule::init:
            return "init";
        case Rule::init_omega:
            return "init_omega";
        case Rule::init_gamma:
            return "init_gamma";
        case Rule::bc:
            return "bc";
        case Rule::ilist_nil:
            return "ilist_nil";
        case Rule::ilist_cons:
            return "ilist_cons";
        case Rule::olist_nil:
            return "olist_nil";
        case Rule::olist_cons:
            return "olist_cons";
    }
    return "?";
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::proved:
            return "proved";
        case Outcome::failed:
            return "failed";
        case Outcome::exhausted:
            return "exhausted";
    }
    return "?";
}

std::uint32_t height(const Derivation& d) {
    std::uint32_t h = 0;
    for (const auto& p : d.premises) h = std::max(h, height(p) + 1);
    return h;
}

std::size_t node_count(const Derivation& d) {
    std::size_t n = 1;
    for (const auto& p : d.premises) n += node_count(p);
    return n;
}

std::string default_atom_printer(const Atom& a, const VarNamer& names) {
    std::function<std::string(const UTerm&)> pr = [&](const UTerm& t) -> std::string {
        switch (t.kind()) {
            case NodeKind::var:
                return names(t.value());
            case NodeKind::app:
                return "APP(" + pr(t.left()) + ", " + pr(t.right()) + ")";
            case NodeKind::abs:
                return "ABS(" + pr(t.left()) + ")";
            case NodeKind::mapp:
                return "?" + std::to_string(t.value()) + "(" + pr(t.left()) + ")";
            default:
                return to_string(t);
        }
    };
    std::string s = a.pred.name() + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? ", " : "") + pr(a.args[i]);
    return s + ")";
}

namespace {

std::string default_var_name(std::uint32_t n) {
    if (n >= detail::kDisplayVarBase) return "y" + std::to_string(n - detail::kDisplayVarBase);
    return "v" + std::to_string(n);
}

std::string goal_str(const Goal& g, const AtomPrinter& p, std::uint32_t k, bool nested) {
    VarNamer names = default_var_name;
    std::string s;
    switch (g.kind()) {
        case GoalKind::tt:
            return "tt";
        case GoalKind::atom:
            return p(g.atom(), names);
        case GoalKind::conj:
            s = goal_str(g.left(), p, k, true) + " and " + goal_str(g.right(), p, k, true);
            break;
        case GoalKind::imp:
            s = p(g.atom(), names) + " imp " + goal_str(g.body(), p, k, false);
            break;
        case GoalKind::ord_imp:
            s = p(g.atom(), names) + " ->> " + goal_str(g.body(), p, k, false);
            break;
        case GoalKind::all: {
            UTerm v = UTerm::var(detail::kDisplayVarBase + k);
            s = "all y" + std::to_string(k) + ". " + goal_str(instantiate_all(g.body(), v), p, k + 1, false);
            break;
        }
    }
    return nested ? "(" + s + ")" : s;
}

std::string atoms_str(const std::vector<Atom>& as, const AtomPrinter& p) {
    std::string s;
    for (std::size_t i = 0; i < as.size(); ++i) s += (i ? ", " : "") + p(as[i], default_var_name);
    return s;
}

void trace_into(const Derivation& d, const AtomPrinter& p, std::size_t depth, std::ostringstream& out) {
    out << depth << '\t' << to_string(d.rule);
    if (d.rule == Rule::bc) out << '(' << d.clause_name << ')';
    if (d.rule == Rule::olist_cons) out << " split=(" << d.split << ')';
    if (d.rule == Rule::all_r && d.eigen) out << ' ' << default_var_name(d.eigen->index());
    out << '\t' << print_sequent(d, p) << '\n';
    for (const auto& q : d.premises) trace_into(q, p, depth + 1, out);
}

}  // namespace

std::string print_goal(const Goal& g, const AtomPrinter& p) { return goal_str(g, p, 0, false); }

std::string print_sequent(const Derivation& d, const AtomPrinter& p) {
    std::string s = "{" + atoms_str(d.gamma, p) + "}";
    if (d.judgment == Judgment::olist || !d.omega.empty()) s += " ; [" + atoms_str(d.omega, p) + "]";
    s += " |-" + std::to_string(d.bound) + " ";
    if (d.judgment == Judgment::goal) return s + print_goal(d.goal, p);
    s += "[";
    for (std::size_t i = 0; i < d.goals.size(); ++i) s += (i ? ", " : "") + print_goal(d.goals[i], p);
    return s + "]";
}

std::string trace_lines(const Derivation& d, const AtomPrinter& p) {
    std::ostringstream out;
    trace_into(d, p, 0, out);
    return out.str();
}

}  // namespace hybrid
