#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "claycop/copula.hpp"
#include "claycop/estimators.hpp"
#include "claycop/pseudo.hpp"
#include "claycop/stats.hpp"

using namespace claycop;

namespace {

const double kTestAlphas[] = {0.8, 1.7, 3.0, 5.0};

PseudoSample pseudo_from_copula(double alpha, int m, std::uint64_t sub) {
    RandomStream stream(2024, sub);
    BivariateSample s;
    for (int i = 0; i < m; ++i) {
        const UnitPair p = sample_pair(Alpha(alpha), stream);
        s.points.push_back({p.u1, p.u2});
    }
    return pseudo_sample(s);
}

double log_likelihood(const PseudoSample& ps, double a) {
    double sum = ps.size() * (std::log1p(a) - std::log(a));
    for (double t : ps.t) sum += std::log1p(-std::pow(t, a));
    return sum;
}

}  // namespace

TEST_CASE("seed equation solution: hand value, endpoint, residual sweep") {
    CHECK(solve_seed_w1(Alpha(1.0), 0.75) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(solve_seed_w1(Alpha(1.0), 1e-9) < 1e-4);

    for (double a : kTestAlphas) {
        for (double u = 0.05; u <= 0.951; u += 0.05) {
            const double w1 = solve_seed_w1(Alpha(a), u);
            CHECK(w1 > u);
            const double lhs = w1 * a / (a + 1.0);
            const double rhs = std::pow(a * (w1 - u), 1.0 / (a + 1.0));
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("alpha1 ratio estimator") {
    CHECK(alpha1_hat(0.5, 1.0).value() == doctest::Approx(1.0));
    for (double s : {0.2, 1.0, 7.5})
        CHECK(alpha1_hat(s, 2.0 * s).value() == doctest::Approx(1.0));
    CHECK_FALSE(alpha1_hat(1.0, 0.9).has_value());
    CHECK_FALSE(alpha1_hat(1.0, 1.0).has_value());
}

TEST_CASE("alpha2 root: hand instance, self-consistency, domain guards") {
    {
        const double diffs[] = {0.25};
        const RootResult r =
            alpha2_hat(std::log(0.5), diffs, 1, 1e-4, 100.0);
        CHECK_FALSE(r.degenerate);
        CHECK(r.alpha == doctest::Approx(1.0).epsilon(1e-9));
    }
    // diffs = t^(a*+1)/a* makes a* an exact root for any (t, a*)
    for (double a_star : kTestAlphas) {
        for (double t = 0.2; t <= 0.81; t += 0.2) {
            const double diffs[] = {std::pow(t, a_star + 1.0) / a_star};
            const RootResult r =
                alpha2_hat(std::log(t), diffs, 1, 1e-4, 100.0);
            CHECK_FALSE(r.degenerate);
            CHECK(r.alpha == doctest::Approx(a_star).epsilon(1e-8));
        }
    }
    const double bad[] = {0.0};
    CHECK_THROWS_AS(alpha2_hat(std::log(0.5), bad, 1, 1e-4, 100.0),
                    std::domain_error);
    const double fine[] = {0.25};
    CHECK_THROWS_AS(alpha2_hat(0.5, fine, 1, 1e-4, 100.0), std::domain_error);
}

TEST_CASE("replica estimate is exact on single-observation instances") {
    for (double a_star : kTestAlphas) {
        for (double t = 0.1; t <= 0.91; t += 0.2) {
            PseudoSample ps{{t}};
            const double u = kendall_cdf(Alpha(a_star), t);
            const std::vector<double> pool{u};
            RandomStream stream(5, 6);
            const ReplicaEstimate rep =
                replica_estimate(ps, Alpha(a_star), pool, stream);
            CHECK(rep.alpha1 == doctest::Approx(a_star).epsilon(1e-9));
            CHECK(rep.alpha2 == doctest::Approx(a_star).epsilon(1e-9));
            CHECK(rep.alpha_hat == doctest::Approx(a_star).epsilon(1e-9));
            CHECK(rep.replica.w1[0] > rep.replica.u[0]);
        }
    }
}

TEST_CASE("accepted replicas satisfy the seed equation") {
    const PseudoSample ps = pseudo_from_copula(1.7, 30, 1);
    const auto pool = ecdf_values(ps);
    RandomStream stream(77, 0);
    const ReplicaEstimate rep =
        replica_estimate(ps, Alpha(1.7), pool, stream);
    const double a = rep.replica.alpha_used;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double w1 = rep.replica.w1[i];
        const double u = rep.replica.u[i];
        CHECK(w1 > u);
        CHECK(std::abs(w1 * a / (a + 1.0) -
                       std::pow(a * (w1 - u), 1.0 / (a + 1.0))) < 1e-10);
    }
}

TEST_CASE("replica estimate is deterministic under a fixed stream") {
    const PseudoSample ps = pseudo_from_copula(0.8, 25, 2);
    const auto pool = ecdf_values(ps);
    RandomStream s1(31, 7);
    RandomStream s2(31, 7);
    const ReplicaEstimate a = replica_estimate(ps, Alpha(0.8), pool, s1);
    const ReplicaEstimate b = replica_estimate(ps, Alpha(0.8), pool, s2);
    CHECK(a.alpha_hat == b.alpha_hat);
    CHECK(a.replica.u == b.replica.u);
    CHECK(a.replica.w1 == b.replica.w1);
}

TEST_CASE("estimators are permutation-invariant in the pseudo-sample") {
    PseudoSample ps = pseudo_from_copula(3.0, 20, 3);
    PseudoSample shuffled = ps;
    std::rotate(shuffled.t.begin(), shuffled.t.begin() + 5,
                shuffled.t.end());
    // invariant up to summation rounding and optimizer precision, not bitwise
    CHECK(mle(ps).alpha ==
          doctest::Approx(mle(shuffled).alpha).epsilon(1e-6));
    RandomStream s1(8, 8);
    RandomStream s2(8, 8);
    CHECK(replica_estimate(ps, Alpha(3.0), ecdf_values(ps), s1).alpha_hat ==
          doctest::Approx(
              replica_estimate(shuffled, Alpha(3.0), ecdf_values(shuffled), s2)
                  .alpha_hat)
              .epsilon(1e-9));
}

TEST_CASE("mle agrees with an exhaustive grid search") {
    const PseudoSample ps = pseudo_from_copula(2.0, 100, 4);
    const MleResult got = mle(ps);

    double best = 0.01;
    double best_ll = -1e300;
    for (double a = 0.01; a <= 20.0; a += 1e-4) {
        const double ll = log_likelihood(ps, a);
        if (ll > best_ll) {
            best_ll = ll;
            best = a;
        }
    }
    CHECK(std::abs(got.alpha - best) < 0.02);
    CHECK_FALSE(got.boundary_warning);

    // stationarity away from the bracket edges
    const double h = 1e-5 * got.alpha;
    const double deriv = (log_likelihood(ps, got.alpha + h) -
                          log_likelihood(ps, got.alpha - h)) /
                         (2.0 * h);
    CHECK(std::abs(deriv) < 1e-4);
}

TEST_CASE("mle flags degenerate concentration at the bracket edge") {
    PseudoSample ps;
    ps.t.assign(50, 1.0 - rank_clamp_eps(50));
    const MleResult res = mle(ps);
    CHECK(res.boundary_warning);
    CHECK(res.alpha > 99.0 * 0.98);
}

TEST_CASE("dummy estimator: degenerate population and concentration") {
    const PseudoSample ps = pseudo_from_copula(2.0, 100, 5);
    {
        RandomStream stream(50, 0);
        const DummyResult one = dummy_ai_estimate(ps, Alpha(2.0), 1, stream);
        CHECK(one.population.estimates.size() == 1);
        CHECK(one.estimate == one.population.estimates[0]);
        CHECK(one.population.provenance == Provenance::dummy);
    }
    {
        RandomStream stream(51, 0);
        const DummyResult res =
            dummy_ai_estimate(ps, Alpha(2.0), 300, stream);
        CHECK(std::abs(res.estimate - 2.0) < 0.2);  // within 10% of alpha*
    }
}

TEST_CASE("mean-field estimator traces and degenerate tail") {
    const PseudoSample ps = pseudo_from_copula(0.8, 50, 6);
    AiConfig cfg;
    cfg.burn_in_steps = 40;
    cfg.tail_steps = 40;
    RandomStream stream(60, 0);
    const AiResult res = ai_estimate(ps, cfg, stream);
    CHECK(res.trace.steps.size() == 80);
    for (const auto& st : res.trace.steps) {
        CHECK(st.alpha_smoothed >= cfg.bracket_lo);
        CHECK(st.alpha_smoothed <= cfg.bracket_hi);
        CHECK(std::isfinite(st.alpha1));
        CHECK(std::isfinite(st.alpha2));
    }
    CHECK(res.tail.estimates.size() == 40);
    CHECK(res.tail.provenance == Provenance::fixed_point_tail);

    AiConfig tiny = cfg;
    tiny.tail_steps = 1;
    RandomStream stream2(60, 0);
    const AiResult single = ai_estimate(ps, tiny, stream2);
    CHECK(single.tail.estimates.size() == 1);
    CHECK(single.estimate == single.tail.estimates[0]);
}

TEST_CASE("full mean-field run is a pure function of seed and config") {
    const PseudoSample ps = pseudo_from_copula(1.7, 30, 7);
    AiConfig cfg;
    cfg.burn_in_steps = 30;
    cfg.tail_steps = 30;
    RandomStream s1(42, 9);
    RandomStream s2(42, 9);
    const AiResult a = ai_estimate(ps, cfg, s1);
    const AiResult b = ai_estimate(ps, cfg, s2);
    CHECK(a.estimate == b.estimate);
    REQUIRE(a.trace.steps.size() == b.trace.steps.size());
    for (std::size_t i = 0; i < a.trace.steps.size(); ++i)
        CHECK(a.trace.steps[i].alpha_smoothed ==
              b.trace.steps[i].alpha_smoothed);
}
