// Copyright (c) 2026, the hybrid authors.
// Licensed under the Apache License Version 2.0.

// hybrid: query the bundled object logics, run property suites, evaluate terms.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "hybrid/contmach.hpp"
#include "hybrid/miniml.hpp"
#include "hybrid/query.hpp"
#include "hybrid/suites.hpp"

namespace {

using namespace hybrid;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    void report() const {
        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << "time: " << ms << " ms\n";
    }
};

// Parses a closed term and remembers its binder names for printing results.
Expr closed_term(const std::string& text, NameHints& hints) {
    NamedTerm n = parse_term(miniml_signature(), text);
    Expr e = encode(miniml_signature(), {}, n);
    collect_name_hints(miniml_signature(), {}, n, hints);
    return e;
}

std::string show_value(const Expr& v, const NameHints& hints) { return show_term(v, &hints).value_or(to_string(v)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level logical framework engine: Mini-ML and a continuation machine"};
    app.require_subcommand(1);

    // query
    auto* q = app.add_subcommand("query", "Prove a goal and print its solutions");
    std::string goal, ol = "miniml", sl = "hh", strategy = "dfs";
    QueryOptions qo;
    q->add_option("goal", goal, "Goal text, e.g. \"exists T. hastype(fun x. x, T)\"")->required();
    q->add_option("--ol", ol, "Object logic: miniml | contmach")->capture_default_str();
    q->add_option("--sl", sl, "Specification logic: hh | olli")->capture_default_str();
    q->add_option("--bound", qo.cfg.bound, "Height bound")->capture_default_str();
    q->add_option("--strategy", strategy, "dfs | iddfs")->capture_default_str();
    q->add_option("--max-solutions", qo.cfg.max_solutions, "Number of solutions to print")->capture_default_str();
    q->add_option("--step-limit", qo.cfg.step_limit, "Search step budget")->capture_default_str();
    q->add_flag("--trace", qo.trace, "Print the derivation of each solution");
    q->add_flag("--json", qo.json, "One JSON object per solution");
    q->add_flag("--show-height", qo.show_height, "Append the derivation height");

    // test
    auto* t = app.add_subcommand("test", "Run a property suite");
    std::string suite, corpus_path;
    SuiteOptions so;
    t->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    t->add_option("--seed", so.seed, "Random seed")->capture_default_str();
    t->add_option("--samples", so.samples, "Number of cases (0: suite default)");
    t->add_option("--corpus", corpus_path, "Corpus file, one term per line");

    // eval / machine
    std::string term;
    std::uint64_t fuel = kDefaultFuel;
    bool strict = false, trace = false;
    auto* ev = app.add_subcommand("eval", "Call-by-value big-step evaluation");
    ev->add_option("term", term, "Closed Mini-ML term")->required();
    ev->add_option("--fuel", fuel, "Evaluation steps")->capture_default_str();
    ev->add_flag("--strict", strict, "Also prove isterm of the input");
    auto* mc = app.add_subcommand("machine", "Run the continuation machine (call-by-name)");
    mc->add_option("term", term, "Closed Mini-ML term")->required();
    mc->add_option("--fuel", fuel, "Machine steps")->capture_default_str();
    mc->add_flag("--trace", trace, "Print every machine state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    Stopwatch sw;
    try {
        if (*q) {
            qo.ol = parse_ol(ol);
            qo.sl = parse_sl(sl);
            if (strategy == "dfs")
                qo.cfg.strategy = Strategy::dfs;
            else if (strategy == "iddfs")
                qo.cfg.strategy = Strategy::iddfs;
            else
                throw usage_error("unknown strategy '" + strategy + "'");
            int rc = run_query(qo, goal, std::cout, std::cerr);
            sw.report();
            return rc;
        }
        if (*t) {
            if (!corpus_path.empty()) so.corpus = load_corpus(corpus_path);
            SuiteReport r = run_named_suite(suite, so);
            std::cout << r.summary() << "\n";
            for (const auto& d : r.diagnostics) std::cout << "  " << d << "\n";
            sw.report();
            return r.ok() ? 0 : 1;
        }
        if (*ev) {
            NameHints hints;
            EvalOutcome r = meta_eval_detailed(closed_term(term, hints), fuel, strict);
            if (r.value)
                std::cout << show_value(*r.value, hints) << "\n";
            else if (r.status == EvalOutcome::Status::out_of_fuel)
                std::cout << "<no value within fuel>\n";
            else
                std::cout << "<stuck>\n";
            sw.report();
            return r.value ? 0 : 1;
        }
        if (*mc) {
            std::vector<MachineState> states;
            NameHints hints;
            MachineOutcome r = machine_run_detailed(closed_term(term, hints), fuel, trace ? &states : nullptr);
            for (const auto& s : states) std::cout << show_state(s) << "\n";
            if (r.value)
                std::cout << show_value(*r.value, hints) << "\n";
            else if (r.status == MachineOutcome::Status::out_of_fuel)
                std::cout << "<no value within fuel>\n";
            else
                std::cout << "<stuck>\n";
            sw.report();
            return r.value ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
