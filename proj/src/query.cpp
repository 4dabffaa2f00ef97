// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

#include "hybrid/query.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "json.hpp"

#include "hybrid/contmach.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/sl_hh.hpp"
#include "hybrid/sl_olli.hpp"

namespace hybrid {
namespace {

using detail::Token;
using detail::TokenStream;

class QueryParser {
   public:
    QueryParser(OLKind ol, const std::string& text, MetaStore& store) : ol_(ol), store_(store), ts_(text) {}

    ParsedQuery run() {
        if (ts_.accept("exists")) {
            do {
                std::string x = ts_.expect_ident();
                if (exist_.count(x)) ts_.fail("variable " + x + " declared twice");
                exist_[x] = q_.names.size();
                q_.names.push_back(x);
                q_.metas.push_back(store_.fresh_meta(0));
                q_.sorts.push_back(Sort::term);
            } while (ts_.accept(","));
            ts_.expect(".");
        }
        q_.goal = body();
        if (!ts_.at_end()) ts_.fail("unexpected trailing input");
        return std::move(q_);
    }

   private:
    OLKind ol_;
    MetaStore& store_;
    TokenStream ts_;
    ParsedQuery q_;
    std::map<std::string, std::size_t> exist_;
    std::vector<std::string> alls_;  // innermost last

    Goal body() {
        Goal u = unit();
        if (ts_.accept("and")) return Goal::conj(std::move(u), body());
        return u;
    }

    Goal unit() {
        if (ts_.accept("tt")) return Goal::tt();
        if (ts_.at("exists")) ts_.fail("exists is only allowed at the top of a query");
        if (ts_.accept("all")) {
            std::string x = ts_.expect_ident();
            ts_.expect(".");
            alls_.push_back(x);
            Goal b = body();
            alls_.pop_back();
            return Goal::all(std::move(b));
        }
        if (ts_.accept("(")) {
            Goal g = body();
            ts_.expect(")");
            return g;
        }
        Atom a = atom();
        if (ts_.accept("imp")) return Goal::imp(std::move(a), body());
        if (ts_.accept("->>")) return Goal::ord_imp(std::move(a), body());
        return Goal::at(std::move(a));
    }

    UTerm existential(const std::string& x, Sort s) {
        std::size_t i = exist_.at(x);
        q_.sorts[i] = s;
        return UTerm::mv(q_.metas[i]);
    }

    UTerm convert(const NamedTerm& n, std::vector<std::string>& scope) {
        switch (n.kind) {
            case NamedTerm::Kind::var: {
                for (std::size_t p = scope.size(); p-- > 0;)
                    if (scope[p] == n.name) return UTerm::bnd(static_cast<std::uint32_t>(scope.size() - 1 - p));
                for (std::size_t p = alls_.size(); p-- > 0;)
                    if (alls_[p] == n.name)
                        return UTerm::bnd(static_cast<std::uint32_t>(scope.size() + alls_.size() - 1 - p));
                if (exist_.count(n.name)) return existential(n.name, Sort::term);
                throw unbound_name("unbound name '" + n.name + "'");
            }
            case NamedTerm::Kind::constant:
                return UTerm::con(n.op);
            case NamedTerm::Kind::app2: {
                UTerm l = convert(*n.left, scope);
                UTerm r = convert(*n.right, scope);
                return UTerm::app(UTerm::app(UTerm::con(n.op), l), r);
            }
            case NamedTerm::Kind::binder: {
                scope.push_back(n.name);
                UTerm b = convert(n.body(), scope);
                scope.pop_back();
                return UTerm::app(UTerm::con(n.op), UTerm::abs(b));
            }
        }
        throw std::logic_error("bad named term");
    }

    UTerm term(std::vector<std::string>& scope) {
        NamedTerm n = detail::parse_term(miniml_signature(), ts_);
        if (scope.empty() && free_names(n).empty()) collect_name_hints(miniml_signature(), {}, n, q_.hints);
        return convert(n, scope);
    }

    UTerm term() {
        std::vector<std::string> scope;
        return term(scope);
    }

    UTerm type() {
        UTerm lhs = [&]() -> UTerm {
            if (ts_.accept("(")) {
                UTerm t = type();
                ts_.expect(")");
                return t;
            }
            if (ts_.accept("i")) return type_base();
            const Token& t = ts_.peek();
            if (t.kind == Token::Kind::ident && exist_.count(t.text)) {
                ts_.next();
                return existential(t.text, Sort::type);
            }
            ts_.fail("expected a type");
        }();
        if (ts_.accept("->")) return UTerm::app(UTerm::app(UTerm::con(type_consts().arrow), lhs), type());
        return lhs;
    }

    UTerm instr(std::vector<std::string>& scope) {
        if (ts_.accept("ev")) return instr_ev(term(scope));
        if (ts_.accept("return")) return instr_return(term(scope));
        if (ts_.accept("app1")) {
            UTerm v = term(scope);
            return instr_app1(v, term(scope));
        }
        if (ts_.accept("(")) {
            UTerm i = instr(scope);
            ts_.expect(")");
            return i;
        }
        const Token& t = ts_.peek();
        if (t.kind == Token::Kind::ident && exist_.count(t.text)) {
            ts_.next();
            return existential(t.text, Sort::instr);
        }
        ts_.fail("expected an instruction");
    }

    UTerm instr() {
        std::vector<std::string> scope;
        return instr(scope);
    }

    UTerm frame() {
        const Token& t = ts_.peek();
        if (t.kind == Token::Kind::ident && exist_.count(t.text) && ts_.peek(1).text != ".") {
            ts_.next();
            return existential(t.text, Sort::frame);
        }
        std::vector<std::string> scope{ts_.expect_ident()};
        ts_.expect(".");
        return UTerm::abs(instr(scope));
    }

    Atom atom() {
        const Token& t = ts_.peek();
        if (t.kind != Token::Kind::ident) ts_.fail("expected an atom");
        std::string p = ts_.next().text;
        static const std::vector<std::string> ml = {"isterm", "eval", "hastype"};
        static const std::vector<std::string> cm = {"ceval", "exec", "init", "cont", "of", "ofI", "ofK"};
        bool is_ml = std::find(ml.begin(), ml.end(), p) != ml.end();
        bool is_cm = std::find(cm.begin(), cm.end(), p) != cm.end();
        if (!is_ml && !is_cm) ts_.fail("unknown predicate " + p);
        if (is_ml != (ol_ == OLKind::miniml))
            throw usage_error("predicate " + p + " does not belong to the selected object logic");
        ts_.expect("(");
        Atom a;
        if (p == "isterm") {
            a = isterm_atom(term());
        } else if (p == "eval") {
            UTerm e = term();
            ts_.expect(",");
            a = eval_atom(e, term());
        } else if (p == "hastype") {
            UTerm e = term();
            ts_.expect(",");
            a = hastype_atom(e, type());
        } else if (p == "ceval") {
            UTerm e = term();
            ts_.expect(",");
            a = ceval_atom(e, term());
        } else if (p == "exec") {
            a = exec_atom(instr());
        } else if (p == "init") {
            a = init_atom(term());
        } else if (p == "cont") {
            a = cont_atom(frame());
        } else if (p == "of") {
            UTerm e = term();
            ts_.expect(",");
            a = of_atom(e, type());
        } else if (p == "ofI") {
            UTerm i = instr();
            ts_.expect(",");
            a = ofI_atom(i, type());
        } else {
            a = ofK_atom(type());
        }
        ts_.expect(")");
        return a;
    }
};

// Surface printer for terms that may contain metavariables and dangling indices.
class Printer {
   public:
    explicit Printer(const VarNamer& names) : names_(names) {}

    // ctx: 0 top, 1 left operand of @, 2 right operand of @ or an instruction argument.
    std::string term(const UTerm& t, int ctx) {
        const auto& k = miniml_consts();
        const auto& c = cm_consts();
        const auto& tp = type_consts();
        switch (t.kind()) {
            case NodeKind::var:
                return names_(t.value());
            case NodeKind::bnd:
                if (t.value() < scope_.size()) return scope_[scope_.size() - 1 - t.value()];
                return "#" + std::to_string(t.value());
            case NodeKind::mv:
                return "?" + std::to_string(t.value());
            case NodeKind::mapp:
                return "?" + std::to_string(t.value()) + "(" + term(t.left(), 0) + ")";
            case NodeKind::con:
                return ConstId::from_raw(t.value()).name();
            case NodeKind::abs:
                return wrap(binder("", t), ctx >= 1);
            case NodeKind::app:
                break;
        }
        UTerm l = t.left(), r = t.right();
        if (l.is(NodeKind::con)) {
            ConstId op = ConstId::from_raw(l.value());
            if ((op == k.cABS || op == k.cFIX) && r.is(NodeKind::abs))
                return wrap(binder(op == k.cABS ? "fun " : "fix ", r), ctx >= 1);
            if (op == c.ev || op == c.ret) return wrap(op.name() + " " + term(r, 2), ctx >= 1);
        }
        if (l.is(NodeKind::app) && l.left().is(NodeKind::con)) {
            ConstId op = ConstId::from_raw(l.left().value());
            if (op == k.cAPP) return wrap(term(l.right(), 1) + " @ " + term(r, 2), ctx == 2);
            if (op == tp.arrow) {
                bool paren = is_arrow(l.right());
                std::string a = term(l.right(), 0);
                return wrap((paren ? "(" + a + ")" : a) + " -> " + term(r, 0), ctx >= 1);
            }
            if (op == c.app1) return wrap("app1 " + term(l.right(), 2) + " " + term(r, 2), ctx >= 1);
        }
        return "(" + term(l, 1) + " " + term(r, 2) + ")";
    }

   private:
    const VarNamer& names_;
    std::vector<std::string> scope_;

    static bool is_arrow(const UTerm& t) {
        return t.is(NodeKind::app) && t.left().is(NodeKind::app) && t.left().left().is(NodeKind::con) &&
               ConstId::from_raw(t.left().left().value()) == type_consts().arrow;
    }

    static std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

    std::string binder(const std::string& kw, const UTerm& abs) {
        std::string x = "x" + std::to_string(scope_.size());
        scope_.push_back(x);
        std::string b = term(abs.left(), 0);
        scope_.pop_back();
        return kw + x + ". " + b;
    }
};

bool has_ord_imp(const Goal& g) {
    switch (g.kind()) {
        case GoalKind::ord_imp:
            return true;
        case GoalKind::conj:
            return has_ord_imp(g.left()) || has_ord_imp(g.right());
        case GoalKind::imp:
        case GoalKind::all:
            return has_ord_imp(g.body());
        default:
            return false;
    }
}

}  // namespace

ParsedQuery parse_query(OLKind ol, const std::string& text, MetaStore& store) {
    return QueryParser(ol, text, store).run();
}

std::string ol_atom_printer(const Atom& a, const VarNamer& names) {
    Printer p(names);
    std::string s = a.pred.name() + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? ", " : "") + p.term(a.args[i], 0);
    return s + ")";
}

std::string show_value(const Expr& v, Sort s, const NameHints* hints) {
    if (s == Sort::term) {
        if (auto t = show_term(v, hints)) return *t;
    } else if (s == Sort::type) {
        if (auto t = print_type(v)) return *t;
    }
    VarNamer names = [](std::uint32_t n) { return "v" + std::to_string(n); };
    return Printer(names).term(v, 0);
}

OLKind parse_ol(const std::string& s) {
    if (s == "miniml") return OLKind::miniml;
    if (s == "contmach") return OLKind::contmach;
    throw usage_error("unknown object logic '" + s + "'");
}

SLKind parse_sl(const std::string& s) {
    if (s == "hh") return SLKind::hh;
    if (s == "olli") return SLKind::olli;
    throw usage_error("unknown specification logic '" + s + "'");
}

int run_query(const QueryOptions& opts, const std::string& text, std::ostream& out, std::ostream& err) {
    MetaStore store;
    ParsedQuery q;
    try {
        if (opts.ol == OLKind::contmach && opts.sl == SLKind::hh)
            throw usage_error("the continuation machine needs the ordered logic (--sl olli)");
        q = parse_query(opts.ol, text, store);
        if (opts.sl == SLKind::hh && has_ord_imp(q.goal))
            throw usage_error("ordered implication needs the ordered logic (--sl olli)");
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    SearchResult r;
    DatabaseOlli olli_db;
    if (opts.sl == SLKind::hh) {
        r = solutions_hh(db_miniml(), {}, q.goal, store, opts.cfg);
    } else {
        olli_db = opts.ol == OLKind::miniml ? to_olli(db_miniml()) : db_contmach();
        r = solutions_olli(olli_db, {}, {}, q.goal, store, opts.cfg);
    }

    bool all_checked = true;
    for (const auto& s : r.solutions) {
        CheckResult c = opts.sl == SLKind::hh ? check_hh(db_miniml(), s.derivation) : check_olli(olli_db, s.derivation);
        if (!c.ok) {
            all_checked = false;
            err << "error: derivation rejected at " << c.path << ": " << c.message << "\n";
            continue;
        }
        std::uint32_t h = height(s.derivation);
        if (opts.json) {
            nlohmann::ordered_json sol = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < q.names.size(); ++i)
                sol[q.names[i]] = show_value(s.metas[q.metas[i]], q.sorts[i], &q.hints);
            nlohmann::ordered_json line = {{"solution", sol}, {"height", h}, {"checked", c.ok}};
            out << line.dump() << "\n";
        } else {
            std::string line;
            for (std::size_t i = 0; i < q.names.size(); ++i)
                line += (i ? ", " : "") + q.names[i] + " = " + show_value(s.metas[q.metas[i]], q.sorts[i], &q.hints);
            if (q.names.empty()) line = "yes";
            if (opts.show_height) line += "; height=" + std::to_string(h);
            out << line << "\n";
        }
        if (opts.trace) out << trace_lines(s.derivation, ol_atom_printer);
    }
    if (!all_checked) return kExitCheck;
    switch (r.outcome) {
        case Outcome::proved:
            return kExitSolved;
        case Outcome::failed:
            if (!opts.json) out << "no\n";
            return kExitFailed;
        case Outcome::exhausted:
            if (!opts.json) out << "exhausted at bound " << opts.cfg.bound << "\n";
            return kExitExhausted;
    }
    return kExitFailed;
}

}  // namespace hybrid
