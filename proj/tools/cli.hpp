#pragma once

// Command-line front end. run_cli is separate from main so the tests can drive
// it in-process.
//
// Exit codes: 0 success, 2 usage or validation failure, 3 census methods
// disagree, 4 an inequality suite found a violation.

#include <sumsets/census.hpp>
#include <sumsets/granular.hpp>
#include <sumsets/inequalities.hpp>
#include <sumsets/io.hpp>
#include <sumsets/lowerbound.hpp>
#include <sumsets/rng.hpp>
#include <sumsets/sumset.hpp>
#include <sumsets/zp_core.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace sumsets::cli {

enum ExitCode : int { ok = 0, usage = 2, disagreement = 3, violation = 4 };

struct RunConfig {
    std::uint64_t p = 7;
    unsigned k = 2;
    unsigned l = 0;
    unsigned m = 0;  // 0: suite default
    std::optional<unsigned> r;
    std::string set_literal;
    std::string method = "direct";
    std::string suite;
    std::string mode = "exhaustive";
    bool exhaustive = false;
    bool exclude_empty = false;
    bool members = false;
    bool timing = false;
    bool allow_degenerate = false;
    std::uint64_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    unsigned max_size = 0;
    std::string format = "json";
    std::string output;
    // granularize
    std::optional<std::uint32_t> L;
    double eps1 = 0.2, eps2 = 0.2, eps3 = 0.2;
    std::int64_t offset = 0;
    std::optional<std::uint32_t> random_size;
};

namespace detail {

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output);
    if (!file) throw Error(ErrorKind::DomainError, "cannot open output file " + cfg.output);
    file << text;
}

inline std::string dump(Json j) { return j.dump(2) + "\n"; }

inline int cmd_sumset(const RunConfig& cfg, std::ostream& out) {
    PrimeModulus mod(cfg.p);
    ResidueSet b = ResidueSet::parse(mod, cfg.set_literal);
    ResidueSet s = iterated_sumset({cfg.k, cfg.l}, b);
    if (cfg.format == "json") {
        emit(cfg, out, dump(Json{{"p", cfg.p}, {"k", cfg.k}, {"l", cfg.l}, {"seed", cfg.seed}, {"B", to_json(b)}, {"sumset", to_json(s)}}));
    } else {
        emit(cfg, out, s.to_list() + "\n" + s.to_hex() + "\n");
    }
    return ok;
}

inline int cmd_census(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    PrimeModulus mod(cfg.p);
    CensusOptions opt{!cfg.exclude_empty, cfg.workers, cfg.timing};
    std::optional<CensusReport> report;
    int code = ok;
    if (cfg.method == "both") {
        CensusReport direct = run_census(mod, cfg.k, cfg.l, opt);
        CensusReport sym = run_census_symmetric(mod, cfg.k, cfg.l, opt);
        if (!direct.same_census(sym)) {
            err << "census methods disagree: direct " << direct.total_distinct << ", symmetric " << sym.total_distinct << "\n";
            code = disagreement;
        }
        report = std::move(direct);
    } else {
        report = run_census(mod, cfg.k, cfg.l, cfg.method == "direct" ? CensusMethod::direct : CensusMethod::symmetric, opt);
    }
    if (cfg.format == "csv") {
        emit(cfg, out, census_csv_header() + "\n" + census_csv_row(*report) + "\n");
    } else {
        Json j = to_json(*report, {cfg.members});
        j["seed"] = cfg.seed;
        emit(cfg, out, dump(j));
    }
    return code;
}

inline VerifyOptions verify_options(const RunConfig& cfg, unsigned default_max_size) {
    VerifyOptions v;
    v.mode = cfg.mode == "random" ? CheckMode::random : CheckMode::exhaustive;
    v.samples = cfg.samples;
    v.seed = cfg.seed;
    v.workers = cfg.workers;
    v.max_set_size = cfg.max_size ? cfg.max_size : (v.mode == CheckMode::exhaustive ? default_max_size : 0);
    return v;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& suite = cfg.suite;
    const bool all = suite == "all";
    std::vector<InequalityReport> reports;
    PrimeModulus mod(cfg.p);
    const unsigned p = mod.value();
    // transform identities draw fixed sample counts from their own seed substreams
    const std::uint64_t transform_samples = cfg.mode == "random" ? cfg.samples : 100;

    if (all || suite == "cd") reports.push_back(verify_cd(mod, cfg.m ? cfg.m : 2, verify_options(cfg, 0)));
    if (all || suite == "pollard") reports.push_back(verify_pollard(mod, verify_options(cfg, 0)));
    if (all || suite == "lemma4") reports.push_back(verify_lemma4(mod, cfg.m ? cfg.m : 3, verify_options(cfg, std::min(3U, p))));
    if (all || suite == "lemma5") reports.push_back(verify_lemma5(mod, cfg.m ? cfg.m : 2, verify_options(cfg, std::min(4U, p))));
    if (all || suite == "lemma6") {
        unsigned lo = cfg.r.value_or(1), hi = cfg.r.value_or(3);
        reports.push_back(verify_lemma6(p, lo, hi));
    }
    if (all || suite == "lemma7") reports.push_back(verify_lemma7(p));
    if (all || suite == "parseval") reports.push_back(verify_parseval(mod, transform_samples, substream_seed(cfg.seed, 1), cfg.workers));
    if (all || suite == "convtheorem")
        reports.push_back(verify_convolution_suite(mod, cfg.m ? cfg.m : 3, transform_samples, substream_seed(cfg.seed, 2), cfg.workers));

    bool clean = true;
    Json list = Json::array();
    for (const auto& r : reports) {
        clean = clean && r.ok();
        list.push_back(to_json(r));
    }
    emit(cfg, out, dump(Json{{"seed", cfg.seed}, {"ok", clean}, {"reports", list}}));
    if (!clean) {
        err << "inequality violations found\n";
        return violation;
    }
    return ok;
}

inline int cmd_granularize(const RunConfig& cfg, std::ostream& out) {
    PrimeModulus mod(cfg.p);
    if (!(cfg.eps1 > 0) || !(cfg.eps2 > 0) || !(cfg.eps3 > 0)) throw Error(ErrorKind::DomainError, "eps values must be > 0");
    ResidueSet a(mod);
    if (cfg.random_size) {
        if (*cfg.random_size > mod.value()) throw Error(ErrorKind::DomainError, "--random exceeds p");
        auto rng = substream(cfg.seed, 0);
        std::vector<std::uint32_t> pool(mod.value());
        std::iota(pool.begin(), pool.end(), 0U);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::uint32_t i = 0; i < *cfg.random_size; ++i) a.insert(pool[i]);
    } else {
        a = ResidueSet::parse(mod, cfg.set_literal);
    }
    if (a.empty()) throw Error(ErrorKind::EmptyInput, "A must be nonempty");
    const std::uint32_t L = cfg.L.value_or(1 + static_cast<std::uint32_t>(std::floor(1.0 / cfg.eps1)));
    auto params = GranularizationParams::for_set(a, cfg.k, cfg.l, L, cfg.eps1, cfg.eps2, cfg.eps3);
    GranularizationResult res = run_granularization(a, params, cfg.offset, cfg.workers);
    Json j = to_json(res);
    j["A"] = to_json(a);
    j["seed"] = cfg.seed;
    emit(cfg, out, dump(j));
    return ok;
}

inline int cmd_lowerbound(const RunConfig& cfg, std::ostream& out) {
    PrimeModulus mod(cfg.p);
    LowerBoundConfig c = derive_config(mod, cfg.k, cfg.l, cfg.allow_degenerate);
    SampleOptions opt{cfg.exhaustive ? SampleMode::exhaustive : SampleMode::montecarlo, cfg.samples, cfg.seed, cfg.workers};
    SampleStats stats = containment_probability(c, opt);
    if (cfg.format == "csv") {
        emit(cfg, out, lowerbound_csv_header() + "\n" + lowerbound_csv_row(c, stats) + "\n");
    } else {
        emit(cfg, out, dump(Json{{"seed", cfg.seed},
                                 {"config", to_json(c)},
                                 {"stats", to_json(stats)},
                                 {"union_bound", union_bound(c.k, c.l, c.N)},
                                 {"guaranteed_good_log2", c.guaranteed_log2()}}));
    }
    return ok;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exact and randomized experiments on (k,l)-sumsets in Z_p", "sumsets"};
    app.require_subcommand(1);
    app.add_option("--seed", cfg.seed, "Seed for every random stream");
    app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
    app.add_option("-o,--output", cfg.output, "Write the result to a file");

    auto add_pkl = [&](CLI::App* sub, bool p_required) {
        auto* opt = sub->add_option("-p", cfg.p, "Prime modulus");
        if (p_required) opt->required();
        sub->add_option("-k", cfg.k, "Number of added copies");
        sub->add_option("-l", cfg.l, "Number of subtracted copies");
    };
    auto* sumset = app.add_subcommand("sumset", "Print kB - lB");
    add_pkl(sumset, true);
    sumset->add_option("-B", cfg.set_literal, "Set literal: 0,1,4 or 0x13")->required();
    sumset->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* census = app.add_subcommand("census", "Count distinct (k,l)-sumsets of Z_p");
    add_pkl(census, true);
    census->add_option("--method", cfg.method, "direct, symmetric or both")->check(CLI::IsMember({"direct", "symmetric", "both"}));
    census->add_flag("--exclude-empty", cfg.exclude_empty, "Do not count B = {}");
    census->add_flag("--members", cfg.members, "List every sumset in the JSON output");
    census->add_flag("--timing", cfg.timing, "Record elapsed time (output is then not reproducible)");
    census->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "Check inequality instances");
    verify->add_option("--suite", cfg.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"cd", "pollard", "lemma4", "lemma5", "lemma6", "lemma7", "parseval", "convtheorem", "all"}));
    verify->add_option("-p", cfg.p, "Prime modulus");
    verify->add_option("-m", cfg.m, "Number of summands");
    verify->add_option("-r", cfg.r, "r for the small-family count");
    verify->add_option("--mode", cfg.mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
    verify->add_option("--samples", cfg.samples, "Random instances");
    verify->add_option("--max-size", cfg.max_size, "Largest set size");

    auto* gran = app.add_subcommand("granularize", "Run the granularization pipeline on a set");
    add_pkl(gran, true);
    auto* set_opt = gran->add_option("-A", cfg.set_literal, "Set literal");
    auto* rnd_opt = gran->add_option("--random", cfg.random_size, "Use a random set of this size");
    set_opt->excludes(rnd_opt);
    gran->add_option("-L", cfg.L, "Interval length (default 1 + floor(1/eps1))");
    gran->add_option("--eps1", cfg.eps1);
    gran->add_option("--eps2", cfg.eps2);
    gran->add_option("--eps3", cfg.eps3);
    gran->add_option("--offset", cfg.offset, "Partition offset y");

    auto* lower = app.add_subcommand("lowerbound", "Random symmetric construction");
    add_pkl(lower, true);
    lower->add_flag("--exhaustive", cfg.exhaustive, "Enumerate every choice of C");
    lower->add_option("--samples", cfg.samples, "Monte Carlo samples");
    lower->add_flag("--allow-degenerate", cfg.allow_degenerate, "Run even when (k+l)N >= L");
    lower->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // CLI11 wants argv with the program name first
    std::vector<const char*> argv{"sumsets"};
    for (const auto& a : args) argv.push_back(a.c_str());
    cfg.format = "";
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (sumset->parsed()) {
            if (cfg.format.empty()) cfg.format = "text";
            return detail::cmd_sumset(cfg, out);
        }
        if (cfg.format.empty()) cfg.format = "json";
        if (census->parsed()) return detail::cmd_census(cfg, out, err);
        if (verify->parsed()) return detail::cmd_verify(cfg, out, err);
        if (gran->parsed()) {
            if (cfg.set_literal.empty() && !cfg.random_size) throw Error(ErrorKind::DomainError, "need -A or --random");
            return detail::cmd_granularize(cfg, out);
        }
        if (lower->parsed()) return detail::cmd_lowerbound(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace sumsets::cli
