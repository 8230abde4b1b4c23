#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "claycop/copula.hpp"
#include "claycop/intervals.hpp"
#include "claycop/stats.hpp"

using namespace claycop;

namespace {

BootstrapPopulation iota_population(int n) {
    BootstrapPopulation pop{{}, Provenance::ci_resample};
    pop.estimates.resize(n);
    std::iota(pop.estimates.begin(), pop.estimates.end(), 1.0);
    return pop;
}

PseudoSample pseudo_from_copula(double alpha, int m, std::uint64_t sub) {
    RandomStream stream(314, sub);
    BivariateSample s;
    for (int i = 0; i < m; ++i) {
        const UnitPair p = sample_pair(Alpha(alpha), stream);
        s.points.push_back({p.u1, p.u2});
    }
    return pseudo_sample(s);
}

}  // namespace

TEST_CASE("nearest-rank quantiles on 1..100") {
    const BootstrapPopulation pop[] = {iota_population(100)};
    const ConfidenceInterval ci = confidence_interval(pop, 0.9);
    CHECK(ci.lower == 5.0);
    CHECK(ci.upper == 95.0);
    CHECK(ci.level == 0.9);
    CHECK(ci.pooled_count == 1);
}

TEST_CASE("merging duplicate populations leaves the interval unchanged") {
    const BootstrapPopulation one[] = {iota_population(100)};
    const BootstrapPopulation three[] = {iota_population(100),
                                         iota_population(100),
                                         iota_population(100)};
    const ConfidenceInterval a = confidence_interval(one, 0.9);
    const ConfidenceInterval b = confidence_interval(three, 0.9);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
}

TEST_CASE("interval is monotone in the level and order-invariant") {
    RandomStream stream(1, 1);
    BootstrapPopulation p1{{}, Provenance::ci_resample};
    BootstrapPopulation p2{{}, Provenance::ci_resample};
    for (int i = 0; i < 137; ++i) p1.estimates.push_back(stream.next_unit());
    for (int i = 0; i < 71; ++i) p2.estimates.push_back(stream.next_unit());

    const BootstrapPopulation ab[] = {p1, p2};
    const BootstrapPopulation ba[] = {p2, p1};
    for (double level : {0.5, 0.8, 0.9, 0.95}) {
        const ConfidenceInterval x = confidence_interval(ab, level);
        const ConfidenceInterval y = confidence_interval(ba, level);
        CHECK(x.lower == y.lower);
        CHECK(x.upper == y.upper);
    }
    const ConfidenceInterval narrow = confidence_interval(ab, 0.8);
    const ConfidenceInterval wide = confidence_interval(ab, 0.95);
    CHECK(wide.lower <= narrow.lower);
    CHECK(wide.upper >= narrow.upper);

    // merged median sits inside any level >= 0.5 interval
    std::vector<double> merged = p1.estimates;
    merged.insert(merged.end(), p2.estimates.begin(), p2.estimates.end());
    const double med = median(merged);
    for (double level : {0.5, 0.9}) {
        const ConfidenceInterval ci = confidence_interval(ab, level);
        CHECK(ci.lower <= med);
        CHECK(med <= ci.upper);
    }
}

TEST_CASE("empty input is rejected") {
    CHECK_THROWS_AS(confidence_interval({}, 0.9), std::invalid_argument);
    const BootstrapPopulation empty[] = {{{}, Provenance::ci_resample}};
    CHECK_THROWS_AS(confidence_interval(empty, 0.9), std::invalid_argument);
}

TEST_CASE("coverage counting") {
    std::vector<ConfidenceInterval> all(10, {0.5, 1.5, 0.9, 3});
    CHECK(coverage(all, Alpha(1.0)) == 1.0);
    CHECK(coverage(all, Alpha(2.0)) == 0.0);
    std::vector<ConfidenceInterval> half = all;
    for (int i = 0; i < 5; ++i) half[i] = {2.0, 3.0, 0.9, 3};
    CHECK(coverage(half, Alpha(1.0)) == 0.5);
    CHECK_THROWS_AS(coverage({}, Alpha(1.0)), std::invalid_argument);
}

TEST_CASE("resample population at the true alpha recenters on it") {
    const PseudoSample ps = pseudo_from_copula(1.7, 100, 1);
    RandomStream stream(9, 9);
    const BootstrapPopulation pop =
        ci_resample_population(ps, Alpha(1.7), 300, stream);
    CHECK(pop.provenance == Provenance::ci_resample);
    CHECK(pop.estimates.size() == 300);
    // the observed sample's statistics pull the center, so the bound is loose
    CHECK(std::abs(median(pop.estimates) - 1.7) < 0.5);

    RandomStream s1(10, 0);
    RandomStream s2(10, 0);
    const auto a = ci_resample_population(ps, Alpha(1.7), 20, s1);
    const auto b = ci_resample_population(ps, Alpha(1.7), 20, s2);
    CHECK(a.estimates == b.estimates);

    RandomStream s3(11, 0);
    CHECK(ci_resample_population(ps, Alpha(1.7), 1, s3).estimates.size() ==
          1);
}
