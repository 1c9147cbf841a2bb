#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mfrisk/compound.hpp"
#include "mfrisk/ensemble.hpp"
#include "mfrisk/errors.hpp"
#include "mfrisk/mfpp.hpp"
#include "mfrisk/mittag_leffler.hpp"
#include "mfrisk/stats.hpp"

using namespace mfrisk;

namespace
{
MixedParams const ref(0.9, 0.5, 0.5, 0.5, 1.0);

struct Draw
{
    std::int64_t n1;
    double y1;
};

std::vector<Draw> ensemble(MixedParams const& p, std::size_t n, std::uint64_t seed)
{
    Grid const tg = Grid::to(1.0, 0.5);
    return run_ensemble<Draw>(n, seed, 1, [&](Rng& r, std::size_t) {
        auto const y = sample_inverse_path(p, tg, 1e-3, r);
        auto const c = simulate_mfpp(p, y, r);
        REQUIRE(c.counts[0] == 0);
        REQUIRE(std::is_sorted(c.counts.begin(), c.counts.end()));
        return Draw{c.counts.back(), y.values.back()};
    });
}
}  // namespace

TEST_CASE("zero operational time gives no events")
{
    Grid const tg = Grid::to(2.0, 0.1);
    InversePath const y{tg, std::vector<double>(tg.size(), 0.0)};
    Rng r = path_rng(1, 0);
    for (auto c : simulate_mfpp(ref, y, r).counts)
        CHECK(c == 0);
}

TEST_CASE("mean and variance of N(1) by Monte Carlo")
{
    MixedParams const p(0.9, 0.5, 0.5, 0.5, 2.0);
    auto const d = ensemble(p, 10000, 2);
    std::vector<double> n, y;
    for (auto const& x : d)
    {
        n.push_back(double(x.n1));
        y.push_back(x.y1);
    }
    CHECK(estimate_mean(n).within(2 * mean_inverse(p, 1.0)));
    CHECK(mfpp_mean(p, 1.0) == doctest::Approx(2 * mean_inverse(p, 1.0)).epsilon(1e-15));

    // Var N - lambda^2 Var Y against lambda U, with the joint influence SE
    auto const vn = variance_influence(n), vy = variance_influence(y);
    std::vector<double> psi(n.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        psi[i] = vn.psi[i] - 4 * vy.psi[i];
    auto const e = estimate_from_influence(vn.value - 4 * vy.value, psi);
    CHECK(e.within(mfpp_mean(p, 1.0)));
    CHECK(std::abs(mfpp_var(p, 1.0, vy.value) - vn.value) < 3 * e.std_error);
}

TEST_CASE("interarrival transform")
{
    CHECK(interarrival_lt(ref, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(interarrival_lt(ref, 1e-12) == doctest::Approx(1.0).epsilon(1e-5));
    double prev = 1.0;
    for (double s = 0.01; s < 100; s *= 1.5)
    {
        double const v = interarrival_lt(ref, s);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(interarrival_lt(ref, 0.0), DomainError);
}

TEST_CASE("interarrival density integrates to one")
{
    // P{W > H} = p0(H) closes the tail
    double const H = 20.0;
    Grid const g = Grid::to(H, 1e-3);
    auto const f = GridFunction::sample(g, [](double t) {
        return t > 0 ? interarrival_density(ref, t) : INFINITY;
    });
    double const mass = cumulative_integral(f).values.back() + state_prob_p0(ref, H);
    CHECK(std::abs(mass - 1) <= 1e-3);
}

TEST_CASE("interarrival density against transform inversion")
{
    double worst = 0.0;
    for (double t = 0.1; t <= 5.0 + 1e-9; t += 0.1)
    {
        double const g = laplace_invert([](double s) { return interarrival_lt(ref, s); }, t);
        worst = std::max(worst, std::abs(g - interarrival_density(ref, t)));
    }
    CHECK(worst <= 1e-3);
    CHECK(std::abs(interarrival_density(ref, 1.0) - 0.206481420257838754601) < 1e-10);
    CHECK(std::abs(interarrival_density(ref, 0.5) - 0.435206447008712440267) < 1e-10);
}

TEST_CASE("c2 = 0 gives the Mittag-Leffler density and survival")
{
    double const a = 0.8, lam = 1.5;
    MixedParams const p(a, 0.3, 1.0, 0.0, lam);
    for (double t : {0.2, 1.0, 4.0})
    {
        double const z = -lam * std::pow(t, a);
        CHECK(interarrival_density(p, t)
              == doctest::Approx(lam * std::pow(t, a - 1) * ml2(a, a, z)).epsilon(1e-12));
        CHECK(state_prob_p0(p, t) == doctest::Approx(ml2(a, 1, z)).epsilon(1e-12));
    }
}

TEST_CASE("p0")
{
    CHECK(state_prob_p0(ref, 0.0) == 1.0);
    CHECK(std::abs(state_prob_p0(ref, 1.0) - 0.390181324028229) < 1e-12);

    auto const d = ensemble(ref, 10000, 3);
    auto const zeros = std::size_t(std::count_if(d.begin(), d.end(),
                                                 [](Draw const& x) { return x.n1 == 0; }));
    CHECK(estimate_proportion(zeros, d.size()).within(state_prob_p0(ref, 1.0)));
    CHECK(1 - interarrival_cdf_lt(ref, 1.0)
          == doctest::Approx(state_prob_p0(ref, 1.0)).epsilon(1e-5));
}

TEST_CASE("p_n: both methods at n = 0 and normalization")
{
    double const p0 = state_prob_p0(ref, 1.0);
    CHECK(std::abs(state_prob_pn(ref, 0, 1.0, PnMethod::laplace) - p0) <= 1e-3);
    CHECK(std::abs(state_prob_pn(ref, 0, 1.0, PnMethod::convolution) - p0) <= 1e-3);

    // N = mean + 10 sd, with sd from the large-t variance bound
    double const t = 2.0;
    double const m = mfpp_mean(ref, t);
    double const sd = std::sqrt(mfpp_var(ref, t, var_inverse_asymptotic(ref, t)));
    int const nmax = int(std::ceil(m + 10 * sd));
    double sum = 0.0;
    for (int n = 0; n <= nmax; ++n)
        sum += state_prob_pn(ref, n, t);
    CHECK(std::abs(1 - sum) <= 1e-4);
}

TEST_CASE("p_n against the Monte Carlo histogram")
{
    auto const d = ensemble(ref, 10000, 4);
    for (int n = 0; n <= 5; ++n)
    {
        auto const hits = std::size_t(
            std::count_if(d.begin(), d.end(), [n](Draw const& x) { return x.n1 == n; }));
        INFO("n = " << n);
        CHECK(estimate_proportion(hits, d.size()).within(state_prob_pn(ref, n, 1.0)));
    }
    CHECK(std::abs(state_prob_pn(ref, 1, 1.0) - 0.302779339923440662695) < 1e-5);
}

TEST_CASE("cross-check between the two p_n methods")
{
    CHECK_NOTHROW(state_prob_pn_checked(ref, 2, 1.0));
    CHECK_THROWS_AS(state_prob_pn_checked(ref, 2, 1.0, 1e-12), CrossCheckFailure);
    CHECK_THROWS_AS(state_prob_pn(ref, -1, 1.0), DomainError);
}

TEST_CASE("probability generating function")
{
    for (double t : {0.5, 1.0, 3.0})
    {
        CHECK(pgf(ref, 1.0, t) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(pgf(ref, 0.0, t) == doctest::Approx(state_prob_p0(ref, t)).epsilon(1e-12));
        double const h = 1e-5;
        double const d = (pgf(ref, 1.0, t) - pgf(ref, 1 - h, t)) / h;
        CHECK(std::abs(d / mfpp_mean(ref, t) - 1) <= 1e-3);

        std::vector<double> v;
        for (int i = 0; i <= 20; ++i)
            v.push_back(pgf(ref, i / 20.0, t));
        for (std::size_t i = 1; i < v.size(); ++i)
            CHECK(v[i] >= v[i - 1]);
        for (std::size_t i = 1; i + 1 < v.size(); ++i)
            CHECK(v[i + 1] - 2 * v[i] + v[i - 1] >= -1e-12);
    }
    CHECK_THROWS_AS(pgf(ref, 1.5, 1.0), DomainError);
}

TEST_CASE("moment formulas")
{
    CHECK(mfpp_var(ref, 1.0, 0.3) - mfpp_mean(ref, 1.0) == doctest::Approx(0.3));
    CHECK(mfpp_cov(ref, 1.0, 1.0, 0.3) == mfpp_var(ref, 1.0, 0.3));
    CHECK_THROWS_AS(mfpp_cov(ref, 2.0, 1.0, 0.1), DomainError);
}

TEST_CASE("first jump times follow the interarrival law")
{
    Grid const tg = Grid::to(5.0, 1e-2);
    auto const first = run_ensemble<double>(10000, 5, 1, [&](Rng& r, std::size_t) {
        auto const y = sample_inverse_path(ref, tg, 1e-3, r);
        auto const c = simulate_mfpp(ref, y, r);
        for (std::size_t i = 0; i < c.counts.size(); ++i)
            if (c.counts[i] > 0)
                return tg[i];
        return 1e300;
    });
    Grid const g = Grid::to(5.0, 1e-3);
    auto const cdf = cumulative_integral(GridFunction::sample(g, [](double t) {
        return t > 0 ? interarrival_density(ref, t) : INFINITY;
    }));
    // the grid records the first jump at the next grid point, so compare on
    // the grid only
    double worst = 0.0;
    std::vector<double> sorted = first;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < tg.size(); ++i)
    {
        double const emp = double(std::upper_bound(sorted.begin(), sorted.end(),
                                                   tg[i] + 1e-9)
                                  - sorted.begin())
                           / double(sorted.size());
        worst = std::max(worst, std::abs(emp - cdf[g.index_of(tg[i])]));
    }
    CHECK(worst <= 0.02);

    auto const exact = run_ensemble<double>(
        10000, 6, 1, [](Rng& r, std::size_t) { return sample_interarrival(ref, r); });
    auto cdf_at = [&](double t) {
        if (t >= 5.0)
            return 1 - state_prob_p0(ref, t);
        double const x = t / g.step();
        auto const i = std::size_t(x);
        return cdf[i] + (x - double(i)) * (cdf[i + 1] - cdf[i]);
    };
    CHECK(ks_statistic(exact, cdf_at) <= 0.02);
}

TEST_CASE("governing equations hold on [0.1, 2]")
{
    Grid const g = Grid::to(2.0, 1e-3);
    GridFunction prev;
    for (int n = 0; n <= 2; ++n)
    {
        auto pn = state_prob_pn_grid(ref, n, g);
        auto const res = mfpp_fde_residual(ref, pn, n > 0 ? &prev : nullptr);
        double worst = 0.0;
        for (std::size_t i = g.index_of(0.1); i < g.size(); ++i)
            worst = std::max(worst, std::abs(res[i]));
        INFO("n = " << n);
        CHECK(worst <= 5e-3);
        prev = std::move(pn);
    }
}
