#pragma once

// JSON and CSV renderings of the result types. Optional: requires
// nlohmann/json on the include path.

#include <sumsets/census.hpp>
#include <sumsets/granular.hpp>
#include <sumsets/inequalities.hpp>
#include <sumsets/lowerbound.hpp>
#include <sumsets/zp_core.hpp>

#include <json.hpp>

#include <sstream>
#include <string>

namespace sumsets {

using Json = nlohmann::ordered_json;

inline Json to_json(const ResidueSet& s) {
    return Json{{"size", s.size()}, {"list", s.to_list()}, {"hex", s.to_hex()}};
}

inline Json to_json(const InequalityReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        Json sets = Json::array();
        for (const auto& s : v.sets) sets.push_back(to_json(s));
        Json params = Json::object();
        for (const auto& [name, value] : v.parameters) params[name] = value;
        violations.push_back(Json{{"sets", sets}, {"parameters", params}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    }
    Json values = Json::object();
    for (const auto& [name, value] : r.values) values[name] = value;
    return Json{{"name", r.name},
                {"p", r.p},
                {"m", r.m},
                {"mode", r.mode},
                {"instances_checked", r.instances_checked},
                {"ok", r.ok()},
                {"values", values},
                {"violations", violations}};
}

struct CensusJsonOptions {
    bool members = false;
};

inline Json to_json(const CensusReport& r, CensusJsonOptions opt = {}) {
    const PrimeModulus mod(r.p);
    BoundComparison b = bound_report(r);
    Json j{{"p", r.p},
           {"k", r.k},
           {"l", r.l},
           {"include_empty", r.include_empty},
           {"method", std::string(to_string(r.method))},
           {"total_distinct", r.total_distinct},
           {"size_histogram", r.size_histogram},
           {"s", r.s},
           {"split_threshold", r.split_threshold},
           {"ss_prime_count", r.ss_prime_count},
           {"ss_double_prime_count", r.ss_double_prime_count},
           {"min_generator_small", r.min_generator_small},
           {"min_generator_large", r.min_generator_large},
           {"lower_bound_value", r.lower_bound_value},
           {"upper_bound_value", r.upper_bound_value},
           {"ratio_to_lower", b.ratio_to_lower},
           {"ratio_to_upper", b.ratio_to_upper},
           {"elapsed_ms", r.elapsed ? Json(r.elapsed->count()) : Json(nullptr)}};
    if (opt.members) {
        Json members = Json::array();
        for (const auto& m : r.members) {
            members.push_back(Json{{"hex", ResidueSet::from_mask(mod, m.mask).to_hex()},
                                   {"size", std::popcount(m.mask)},
                                   {"min_generator", m.min_generator},
                                   {"max_generator", m.max_generator}});
        }
        j["members"] = members;
    }
    return j;
}

inline std::string census_csv_header() { return "p,k,l,total,ss_prime,ss_double_prime,lb,ub,elapsed_ms"; }

inline std::string census_csv_row(const CensusReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.p << ',' << r.k << ',' << r.l << ',' << r.total_distinct << ',' << r.ss_prime_count << ','
       << r.ss_double_prime_count << ',' << r.lower_bound_value << ',' << r.upper_bound_value << ',';
    if (r.elapsed) os << r.elapsed->count();
    return os.str();
}

inline Json to_json(const GranularizationResult& g) {
    const auto& pr = g.params;
    return Json{{"params",
                 {{"k", pr.k}, {"l", pr.l}, {"L", pr.L}, {"eps1", pr.eps1}, {"eps2", pr.eps2}, {"eps3", pr.eps3}, {"alpha", pr.alpha}}},
                {"delta", g.delta},
                {"q", g.q},
                {"frame_dilation", g.frame_dilation},
                {"offset", g.offset},
                {"max_dev", g.max_dev},
                {"cond4_satisfied", g.cond4_satisfied},
                {"condition3", g.condition3},
                {"significant_spectrum", to_json(g.significant)},
                {"A_prime", to_json(g.a_prime)},
                {"removed_mass", g.removed},
                {"F", to_json(g.exceptional.members)},
                {"F_size", g.exceptional.members.size()},
                {"F_threshold", g.exceptional.threshold}};
}

inline Json to_json(const LowerBoundConfig& c) {
    return Json{{"p", c.modulus.value()},
                {"k", c.k},
                {"l", c.l},
                {"L", c.L},
                {"N", c.N},
                {"anchor", c.anchor},
                {"regime_valid", c.regime_valid},
                {"X", c.X},
                {"Y", c.Y},
                {"P_first", c.P.empty() ? 0 : c.P.front()},
                {"P_last", c.P.empty() ? 0 : c.P.back()},
                {"P_size", c.P.size()},
                {"free", c.free}};
}

inline Json to_json(const SampleStats& s) {
    return Json{{"mode", s.mode == SampleMode::exhaustive ? "exhaustive" : "montecarlo"},
                {"samples", s.samples},
                {"successes", s.successes},
                {"distinct_good", s.distinct_good},
                {"empirical_prob", s.empirical_prob},
                {"seed", s.seed ? Json(*s.seed) : Json(nullptr)},
                {"failures", s.failures}};
}

inline std::string lowerbound_csv_header() { return "p,k,l,L,N,free,prob,distinct_good,bound"; }

inline std::string lowerbound_csv_row(const LowerBoundConfig& c, const SampleStats& s) {
    std::ostringstream os;
    os.precision(17);
    os << c.modulus.value() << ',' << c.k << ',' << c.l << ',' << c.L << ',' << c.N << ',' << c.free.size() << ','
       << s.empirical_prob << ',' << s.distinct_good << ',' << union_bound(c.k, c.l, c.N);
    return os.str();
}

}  // namespace sumsets
