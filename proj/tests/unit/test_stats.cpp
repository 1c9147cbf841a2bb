#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mfrisk/random.hpp"
#include "mfrisk/stats.hpp"

using namespace mfrisk;

TEST_CASE("pairwise summation")
{
    std::vector<double> x(1000001, 0.1);
    x[0] = 1e8;
    CHECK(std::abs(pairwise_sum(x) - (1e8 + 100000.0)) < 1e-6);
    CHECK(pairwise_sum({}) == 0.0);
    CHECK(sample_mean({1, 2, 3, 4}) == 2.5);
}

TEST_CASE("mean and variance estimates")
{
    std::vector<double> const x{1, 2, 3, 4, 5};
    auto const m = estimate_mean(x);
    CHECK(m.value == 3.0);
    CHECK(m.n_paths == 5);
    // sd with the 1/(n-1) divisor, over sqrt(n)
    CHECK(m.std_error == doctest::Approx(std::sqrt(2.5 / 5)));
    CHECK(m.within(3.0 + 2.9 * m.std_error));
    CHECK_FALSE(m.within(3.0 + 3.1 * m.std_error));

    auto const v = variance_influence(x);
    CHECK(v.value == doctest::Approx(2.0));
    double s = 0.0;
    for (double p : v.psi)
        s += p;
    CHECK(std::abs(s) < 1e-12);

    auto const c = covariance_influence(x, {2, 4, 6, 8, 10});
    CHECK(c.value == doctest::Approx(4.0));
}

TEST_CASE("variance standard error matches its sampling spread")
{
    // Var of a unit exponential is 1; 200 replicate estimates from n = 2000
    Rng r = path_rng(3, 0);
    std::vector<double> est, se;
    for (int k = 0; k < 200; ++k)
    {
        std::vector<double> x(2000);
        for (auto& v : x)
            v = standard_exponential(r);
        auto const e = estimate_variance(x);
        est.push_back(e.value);
        se.push_back(e.std_error);
    }
    double const spread = estimate_mean(est).std_error * std::sqrt(200.0);
    CHECK(spread == doctest::Approx(sample_mean(se)).epsilon(0.15));
    CHECK(estimate_mean(est).within(1.0 - 1.0 / 2000));
}

TEST_CASE("proportions")
{
    auto const p = estimate_proportion(25, 100);
    CHECK(p.value == 0.25);
    CHECK(p.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
    CHECK(estimate_proportion(0, 10).std_error == 0.0);
}

TEST_CASE("Kolmogorov-Smirnov statistics")
{
    CHECK(ks_statistic_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(ks_statistic_two_sample({1, 2}, {3, 4}) == 1.0);
    CHECK(ks_statistic({0.5}, [](double t) { return t; }) == doctest::Approx(0.5));

    Rng r = path_rng(4, 0);
    std::vector<double> x(5000);
    for (auto& v : x)
        v = uniform_open(r);
    double const d = ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
    CHECK(d < 1.63 / std::sqrt(5000.0));
    CHECK(ks_pvalue(d, 5000) > 0.01);
    CHECK(ks_pvalue(0.1, 5000) < 1e-10);
    CHECK(ks_pvalue(0.0, 10) == doctest::Approx(1.0));
}

TEST_CASE("per-path streams are reproducible and distinct")
{
    Rng a = path_rng(9, 17), b = path_rng(9, 17), c = path_rng(9, 18);
    for (int i = 0; i < 10; ++i)
    {
        auto const x = a(), y = b(), z = c();
        CHECK(x == y);
        CHECK(x != z);
    }
    Rng r = path_rng(1, 1);
    for (int i = 0; i < 10000; ++i)
    {
        double const u = uniform_open(r);
        CHECK(u > 0);
        CHECK(u < 1);
    }
}
