// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/contmach.hpp"

#include "hybrid/miniml.hpp"
#include "hybrid/sl_olli.hpp"

namespace hybrid {

const CMConsts& cm_consts() {
    static const CMConsts c{ConstId::intern("cm", "ev"),    ConstId::intern("cm", "return"),
                            ConstId::intern("cm", "app1"),  ConstId::intern("cm", "ceval"),
                            ConstId::intern("cm", "exec"),  ConstId::intern("cm", "init"),
                            ConstId::intern("cm", "cont"),  ConstId::intern("cm", "of"),
                            ConstId::intern("cm", "ofI"),   ConstId::intern("cm", "ofK")};
    return c;
}

Expr instr_ev(const Expr& e) { return Expr::app(Expr::con(cm_consts().ev), e); }
Expr instr_return(const Expr& v) { return Expr::app(Expr::con(cm_consts().ret), v); }
Expr instr_app1(const Expr& v, const Expr& e) {
    return Expr::app(Expr::app(Expr::con(cm_consts().app1), v), e);
}
UTerm instr_ev(const UTerm& e) { return UTerm::app(UTerm::con(cm_consts().ev), e); }
UTerm instr_return(const UTerm& v) { return UTerm::app(UTerm::con(cm_consts().ret), v); }
UTerm instr_app1(const UTerm& v, const UTerm& e) {
    return UTerm::app(UTerm::app(UTerm::con(cm_consts().app1), v), e);
}

Atom ceval_atom(const UTerm& e, const UTerm& v) { return Atom{cm_consts().ceval, {e, v}}; }
Atom exec_atom(const UTerm& i) { return Atom{cm_consts().exec, {i}}; }
Atom init_atom(const UTerm& v) { return Atom{cm_consts().init, {v}}; }
Atom cont_atom(const UTerm& frame) { return Atom{cm_consts().cont, {frame}}; }
Atom of_atom(const UTerm& e, const UTerm& t) { return Atom{cm_consts().of, {e, t}}; }
Atom ofI_atom(const UTerm& i, const UTerm& t) { return Atom{cm_consts().ofI, {i, t}}; }
Atom ofK_atom(const UTerm& t) { return Atom{cm_consts().ofK, {t}}; }

namespace {

enum class IShape { ev, ret, app1, other };

IShape instr_shape(const Expr& i, Expr& a, Expr& b) {
    const auto& c = cm_consts();
    if (!i.is(ExprKind::app)) return IShape::other;
    Expr l = i.left();
    if (l.is(ExprKind::con)) {
        a = i.right();
        if (l.con_id() == c.ev) return IShape::ev;
        if (l.con_id() == c.ret) return IShape::ret;
        return IShape::other;
    }
    if (l.is(ExprKind::app) && l.left().is(ExprKind::con) && l.left().con_id() == c.app1) {
        a = l.right();
        b = i.right();
        return IShape::app1;
    }
    return IShape::other;
}

}  // namespace

bool operator==(const MachineState& a, const MachineState& b) {
    if (a.index() != b.index()) return false;
    if (const auto* r = std::get_if<Run>(&a)) {
        const auto& s = std::get<Run>(b);
        return r->instr == s.instr && r->k == s.k;
    }
    return std::get<Answer>(a).value == std::get<Answer>(b).value;
}

std::optional<MachineState> machine_step(const MachineState& s) {
    const auto* run = std::get_if<Run>(&s);
    if (!run) return std::nullopt;
    Expr a = run->instr, b = run->instr;
    switch (instr_shape(run->instr, a, b)) {
        case IShape::ret:
            if (run->k.empty()) return Answer{a};  // st_init
            {
                Cont k(run->k.begin(), run->k.end() - 1);
                return Run{std::move(k), instantiate(run->k.back(), a)};  // st_return
            }
        case IShape::ev: {
            Expr body = a, e2 = a;
            switch (ml_shape(a, &body, &e2)) {
                case MLShape::fun:
                    return Run{run->k, instr_return(a)};
                case MLShape::fix:
                    return Run{run->k, instr_ev(instantiate(Abstraction{body}, a))};
                case MLShape::app: {
                    Cont k = run->k;
                    k.push_back(Abstraction{instr_app1(Expr::bnd(0), e2)});
                    return Run{std::move(k), instr_ev(body)};
                }
                case MLShape::other:
                    return std::nullopt;
            }
            return std::nullopt;
        }
        case IShape::app1: {
            Expr body = a;
            if (ml_shape(a, &body, nullptr) != MLShape::fun) return std::nullopt;
            return Run{run->k, instr_ev(instantiate(Abstraction{body}, b))};  // by name
        }
        case IShape::other:
            return std::nullopt;
    }
    return std::nullopt;
}

MachineOutcome machine_run_detailed(const Expr& e, std::uint64_t fuel, std::vector<MachineState>* trace) {
    if (!proper(e)) throw non_proper_argument("machine_run: term is not proper");
    MachineOutcome out;
    MachineState s = Run{{}, instr_ev(e)};
    if (trace) trace->push_back(s);
    for (;;) {
        if (const auto* ans = std::get_if<Answer>(&s)) {
            out.status = MachineOutcome::Status::value;
            out.value = ans->value;
            return out;
        }
        if (out.steps >= fuel) {
            out.status = MachineOutcome::Status::out_of_fuel;
            return out;
        }
        auto next = machine_step(s);
        if (!next) {
            out.status = MachineOutcome::Status::stuck;
            return out;
        }
        ++out.steps;
        s = std::move(*next);
        if (trace) trace->push_back(s);
    }
}

std::optional<Expr> machine_run(const Expr& e, std::uint64_t fuel, std::vector<MachineState>* trace) {
    return machine_run_detailed(e, fuel, trace).value;
}

namespace {

Expr arrow(const Expr& a, const Expr& b) { return type_arrow(a, b); }

// First-order inference over types whose variables are VAR nodes.
class TypeInfer {
   public:
    explicit TypeInfer(const TypeEnv& gamma) : gamma_(gamma) {}

    Expr fresh() {
        sub_.emplace_back();
        return Expr::var(static_cast<std::uint32_t>(sub_.size() - 1));
    }

    Expr walk(Expr t) const {
        while (t.is(ExprKind::var) && sub_[t.index()]) t = *sub_[t.index()];
        return t;
    }

    Expr resolve(const Expr& t) const {
        Expr w = walk(t);
        if (w.is(ExprKind::app)) return Expr::app(resolve(w.left()), resolve(w.right()));
        return w;
    }

    bool occurs(std::uint32_t v, const Expr& t) const {
        Expr w = walk(t);
        if (w.is(ExprKind::var)) return w.index() == v;
        if (w.is(ExprKind::app)) return occurs(v, w.left()) || occurs(v, w.right());
        return false;
    }

    bool unify(const Expr& x, const Expr& y) {
        Expr a = walk(x), b = walk(y);
        if (a == b) return true;
        if (a.is(ExprKind::var)) {
            if (occurs(a.index(), b)) return false;
            sub_[a.index()] = b;
            return true;
        }
        if (b.is(ExprKind::var)) return unify(b, a);
        if (a.is(ExprKind::app) && b.is(ExprKind::app)) return unify(a.left(), b.left()) && unify(a.right(), b.right());
        return false;
    }

    std::optional<Expr> expr(const Expr& e) {
        if (e.is(ExprKind::bnd)) {
            if (e.index() >= bound_.size()) return std::nullopt;
            return bound_[bound_.size() - 1 - e.index()];
        }
        if (e.is(ExprKind::var)) {
            auto it = gamma_.find(e.index());
            if (it == gamma_.end()) return std::nullopt;
            return it->second;
        }
        Expr a = e, b = e;
        switch (ml_shape(e, &a, &b)) {
            case MLShape::fun: {
                Expr x = fresh();
                auto r = under(x, [&] { return expr(a); });
                if (!r) return std::nullopt;
                return arrow(x, *r);
            }
            case MLShape::fix: {
                Expr x = fresh();
                auto r = under(x, [&] { return expr(a); });
                if (!r || !unify(x, *r)) return std::nullopt;
                return x;
            }
            case MLShape::app: {
                auto f = expr(a);
                if (!f) return std::nullopt;
                auto x = expr(b);
                if (!x) return std::nullopt;
                Expr r = fresh();
                if (!unify(*f, arrow(*x, r))) return std::nullopt;
                return r;
            }
            case MLShape::other:
                return std::nullopt;
        }
        return std::nullopt;
    }

    std::optional<Expr> instr(const Expr& i) {
        Expr a = i, b = i;
        switch (instr_shape(i, a, b)) {
            case IShape::ev:
            case IShape::ret:
                return expr(a);
            case IShape::app1: {
                auto v = expr(a);
                if (!v) return std::nullopt;
                auto x = expr(b);
                if (!x) return std::nullopt;
                Expr r = fresh();
                if (!unify(*v, arrow(*x, r))) return std::nullopt;
                return r;
            }
            case IShape::other:
                return std::nullopt;
        }
        return std::nullopt;
    }

    // Type tau1 -> tau2 of the stack made of the first n frames.
    std::optional<Expr> cont(const Cont& k, std::size_t n) {
        if (n == 0) {
            Expr x = fresh();
            return arrow(x, x);
        }
        Expr t1 = fresh();
        auto ti = under(t1, [&] { return instr(k[n - 1].body); });
        if (!ti) return std::nullopt;
        auto rest = cont(k, n - 1);
        if (!rest) return std::nullopt;
        Expr t2 = fresh();
        if (!unify(*rest, arrow(*ti, t2))) return std::nullopt;
        return arrow(t1, t2);
    }

   private:
    template <class F>
    std::optional<Expr> under(const Expr& x, F f) {
        bound_.push_back(x);
        auto r = f();
        bound_.pop_back();
        return r;
    }

    const TypeEnv& gamma_;
    std::vector<Expr> bound_;
    std::vector<std::optional<Expr>> sub_;
};

Expr ground_tvars(const Expr& t) {
    if (t.is(ExprKind::var)) return type_base();
    if (t.is(ExprKind::app)) return Expr::app(ground_tvars(t.left()), ground_tvars(t.right()));
    return t;
}

}  // namespace

bool typecheck_expr(const TypeEnv& gamma, const Expr& e, const Expr& t) {
    TypeInfer inf(gamma);
    auto r = inf.expr(e);
    return r && inf.unify(*r, t);
}

bool typecheck_instr(const TypeEnv& gamma, const Expr& i, const Expr& t) {
    TypeInfer inf(gamma);
    auto r = inf.instr(i);
    return r && inf.unify(*r, t);
}

bool typecheck_cont(const TypeEnv& gamma, const Cont& k, const Expr& t) {
    TypeInfer inf(gamma);
    auto r = inf.cont(k, k.size());
    return r && inf.unify(*r, t);
}

bool typecheck_state(const MachineState& s, const Expr& t) {
    TypeEnv empty;
    if (const auto* ans = std::get_if<Answer>(&s)) return typecheck_expr(empty, ans->value, t);
    const auto& run = std::get<Run>(s);
    TypeInfer inf(empty);
    auto ti = inf.instr(run.instr);
    if (!ti) return false;
    auto tk = inf.cont(run.k, run.k.size());
    return tk && inf.unify(*tk, arrow(*ti, t));
}

std::optional<Expr> ground_principal_type(const Expr& e) {
    TypeEnv empty;
    TypeInfer inf(empty);
    auto r = inf.expr(e);
    if (!r) return std::nullopt;
    return ground_tvars(inf.resolve(*r));
}

namespace {

UTerm mv(MetaId i) { return UTerm::mv(i); }
UTerm tarrow(const UTerm& a, const UTerm& b) {
    return UTerm::app(UTerm::app(UTerm::con(type_consts().arrow), a), b);
}
UTerm fun_of(MetaId e) { return ml_fun(UTerm::mapp(e, UTerm::bnd(0))); }
UTerm fix_of(MetaId e) { return ml_fix(UTerm::mapp(e, UTerm::bnd(0))); }
// The abstraction lambda x. K x as an atom argument.
UTerm frame_of(MetaId k) { return UTerm::abs(UTerm::mapp(k, UTerm::bnd(0))); }

DatabaseOlli build_db() {
    using G = Goal;
    DatabaseOlli db;
    db.name = "contmach";
    db.ground_default = type_base();
    auto& cs = db.clauses;
    // typing of expressions
    cs.push_back({"of_app", {{"E1"}, {"E2"}, {"T"}, {"T'"}}, of_atom(ml_app(mv(0), mv(1)), mv(2)), {},
                  {G::at(of_atom(mv(0), tarrow(mv(3), mv(2)))), G::at(of_atom(mv(1), mv(3)))}});
    cs.push_back({"of_fun", {{"E", 1}, {"T1"}, {"T2"}}, of_atom(fun_of(0), tarrow(mv(1), mv(2))), {},
                  {G::all(G::imp(of_atom(UTerm::bnd(0), mv(1)), G::at(of_atom(UTerm::mapp(0, UTerm::bnd(0)), mv(2)))))}});
    cs.push_back({"of_fix", {{"E", 1}, {"T"}}, of_atom(fix_of(0), mv(1)), {},
                  {G::all(G::imp(of_atom(UTerm::bnd(0), mv(1)), G::at(of_atom(UTerm::mapp(0, UTerm::bnd(0)), mv(1)))))}});
    // typing of instructions
    cs.push_back({"ofI_ev", {{"E"}, {"T"}}, ofI_atom(instr_ev(mv(0)), mv(1)), {}, {G::at(of_atom(mv(0), mv(1)))}});
    cs.push_back({"ofI_return", {{"V"}, {"T"}}, ofI_atom(instr_return(mv(0)), mv(1)), {},
                  {G::at(of_atom(mv(0), mv(1)))}});
    cs.push_back({"ofI_app1", {{"V"}, {"E"}, {"T"}, {"T2"}}, ofI_atom(instr_app1(mv(0), mv(1)), mv(2)), {},
                  {G::at(of_atom(mv(0), tarrow(mv(3), mv(2)))), G::at(of_atom(mv(1), mv(3)))}});
    // typing of continuations held in the ordered context
    cs.push_back({"ofK_init", {{"V"}, {"T"}}, ofK_atom(tarrow(mv(1), mv(1))), {G::at(init_atom(mv(0)))}, {}});
    cs.push_back({"ofK_cont",
                  {{"K", 1}, {"T1"}, {"T2"}, {"T"}},
                  ofK_atom(tarrow(mv(1), mv(2))),
                  {G::at(cont_atom(frame_of(0))), G::at(ofK_atom(tarrow(mv(3), mv(2))))},
                  {G::all(G::imp(of_atom(UTerm::bnd(0), mv(1)), G::at(ofI_atom(UTerm::mapp(0, UTerm::bnd(0)), mv(3)))))}});
    // evaluation
    cs.push_back({"ceval", {{"E"}, {"V"}}, ceval_atom(mv(0), mv(1)),
                  {G::ord_imp(init_atom(mv(1)), G::at(exec_atom(instr_ev(mv(0)))))}, {}});
    cs.push_back({"exec_init", {{"V"}}, exec_atom(instr_return(mv(0))), {G::at(init_atom(mv(0)))}, {}});
    cs.push_back({"exec_cont", {{"K", 1}, {"V"}}, exec_atom(instr_return(mv(1))),
                  {G::at(cont_atom(frame_of(0))), G::at(exec_atom(UTerm::mapp(0, mv(1))))}, {}});
    cs.push_back({"exec_fun", {{"E", 1}}, exec_atom(instr_ev(fun_of(0))), {G::at(exec_atom(instr_return(fun_of(0))))},
                  {}});
    cs.push_back({"exec_app", {{"E1"}, {"E2"}}, exec_atom(instr_ev(ml_app(mv(0), mv(1)))),
                  {G::ord_imp(cont_atom(UTerm::abs(instr_app1(UTerm::bnd(0), mv(1)))), G::at(exec_atom(instr_ev(mv(0)))))},
                  {}});
    cs.push_back({"exec_app1", {{"E", 1}, {"E2"}}, exec_atom(instr_app1(fun_of(0), mv(1))),
                  {G::at(exec_atom(instr_ev(UTerm::mapp(0, mv(1)))))}, {}});
    cs.push_back({"exec_fix", {{"E", 1}}, exec_atom(instr_ev(fix_of(0))),
                  {G::at(exec_atom(instr_ev(UTerm::mapp(0, fix_of(0)))))}, {}});
    db.validate();
    return db;
}

}  // namespace

const DatabaseOlli& db_contmach() {
    static const DatabaseOlli db = build_db();
    return db;
}

const char* to_string(CMReport::Status s) {
    switch (s) {
        case CMReport::Status::preserved:
            return "preserved";
        case CMReport::Status::violated:
            return "violated";
        case CMReport::Status::inconclusive:
            return "inconclusive";
        case CMReport::Status::precondition:
            return "precondition";
    }
    return "?";
}

CMReport sr_check_instance_cm(const Expr& e, const Expr& t, std::uint32_t bound, std::uint64_t fuel) {
    CMReport rep;
    if (!proper(e) || !typecheck_expr({}, e, t)) {
        rep.status = CMReport::Status::precondition;
        rep.detail = "term does not have the given type";
        return rep;
    }
    std::vector<MachineState> trace;
    auto run = machine_run_detailed(e, fuel, &trace);
    rep.states = trace.size();
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (!typecheck_state(trace[i], t)) {
            rep.status = CMReport::Status::violated;
            rep.detail = "state " + std::to_string(i) + " is not well typed: " + show_state(trace[i]);
            return rep;
        }
    }
    if (run.status == MachineOutcome::Status::out_of_fuel) {
        rep.detail = "machine ran out of fuel";
        return rep;
    }
    if (run.status == MachineOutcome::Status::stuck) {
        rep.status = CMReport::Status::violated;
        rep.detail = "well-typed state got stuck";
        return rep;
    }
    rep.value = run.value;

    const DatabaseOlli& db = db_contmach();
    SearchConfig cfg;
    cfg.bound = bound;
    MetaStore store;
    MetaId v = store.fresh_meta(0);
    auto r = solutions_olli(db, {}, {}, Goal::at(ceval_atom(e, UTerm::mv(v))), store, cfg);
    if (r.outcome == Outcome::exhausted) {
        rep.detail = "ceval search hit the bound";
        return rep;
    }
    if (!r.proved() || r.solutions[0].metas[v] != *run.value) {
        rep.status = CMReport::Status::violated;
        rep.detail = "ceval disagrees with the machine";
        return rep;
    }
    MetaStore ts;
    auto ty = prove_ilist(db, {}, {Goal::at(of_atom(*run.value, t))}, ts, cfg);
    if (ty.outcome == Outcome::exhausted) {
        rep.detail = "value typing hit the bound";
        return rep;
    }
    if (!ty.proved()) {
        rep.status = CMReport::Status::violated;
        rep.detail = "value does not have the program's type";
        return rep;
    }
    rep.status = CMReport::Status::preserved;
    return rep;
}

namespace {

std::string show_expr(const Expr& e, const VarContext& ctx) {
    auto n = decode(miniml_signature(), ctx, e);
    if (!n) return to_string(e);
    if (n->kind == NamedTerm::Kind::var) return n->name;
    return "(" + print_term(miniml_signature(), *n) + ")";
}

}  // namespace

std::string show_instr(const Expr& i, const VarContext& ctx) {
    Expr a = i, b = i;
    switch (instr_shape(i, a, b)) {
        case IShape::ev:
            return "ev " + show_expr(a, ctx);
        case IShape::ret:
            return "return " + show_expr(a, ctx);
        case IShape::app1:
            return "app1 " + show_expr(a, ctx) + " " + show_expr(b, ctx);
        case IShape::other:
            break;
    }
    return to_string(i);
}

std::string show_state(const MachineState& s) {
    if (const auto* ans = std::get_if<Answer>(&s)) return "answer " + show_expr(ans->value, {});
    const auto& run = std::get<Run>(s);
    std::string out = "init";
    for (const auto& f : run.k) {
        std::uint32_t m = f.body.var_limit();
        VarContext ctx;
        for (std::uint32_t j = 0; j < m; ++j) ctx.push_back("v" + std::to_string(j));
        ctx.push_back("x");
        out += " ; x. " + show_instr(instantiate(f, Expr::var(m)), ctx);
    }
    return out + " <> " + show_instr(run.instr, {});
}

}  // namespace hybrid
