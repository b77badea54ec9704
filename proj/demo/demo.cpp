#include <sumsets/census.hpp>
#include <sumsets/granular.hpp>
#include <sumsets/io.hpp>
#include <sumsets/lowerbound.hpp>
#include <sumsets/sumset.hpp>

#include <iostream>

using namespace sumsets;

int main() {
    PrimeModulus p7(7);
    ResidueSet b = ResidueSet::parse(p7, "0,1,3");
    std::cout << "B = {" << b.to_list() << "}, 2B - B = {" << iterated_sumset({2, 1}, b).to_list() << "}\n";

    for (auto [k, l] : {std::pair{2U, 0U}, std::pair{1U, 1U}}) {
        auto r = run_census_symmetric(PrimeModulus(11), k, l);
        std::cout << "|SS_{" << k << "," << l << "}(Z_11)| = " << r.total_distinct << "\n";
    }

    PrimeModulus p101(101);
    ResidueSet a = ResidueSet::parse(p101, "0,1,2,3,4,5,6,7,8,9,20,21,22,23,50");
    auto g = run_granularization(a, GranularizationParams::for_set(a, 2, 0, 10, 0.2, 0.2, 0.2));
    std::cout << "A' = {" << g.a_prime.to_list() << "}, q = " << g.q << ", removed " << g.removed << "\n";

    auto c = derive_config(p101, 2, 0);
    auto s = containment_probability(c, {SampleMode::exhaustive, 0, 0, 1});
    std::cout << to_json(s).dump(2) << "\n";
}
