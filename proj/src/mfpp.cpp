#include "mfrisk/mfpp.hpp"

#include <cmath>
#include <string>

#include "mfrisk/errors.hpp"
#include "mfrisk/mittag_leffler.hpp"

namespace mfrisk
{
namespace
{
// Parameters as seen by the series formulas: a zero weight collapses the
// process to a single exponent with C1 = 1.
struct Effective
{
    double a1, a2, c1, c2;
};

Effective effective(MixedParams const& p)
{
    if (p.degenerate())
    {
        double const a = p.single_alpha();
        return {a, a, 1.0, 0.0};
    }
    return {p.alpha1, p.alpha2, p.c1, p.c2};
}

}  // namespace

double mixed_ml_series(MixedParams const& p, double t, double beta0, int shift,
                       double y_scale, int kmax)
{
    if (!(t >= 0))
        throw DomainError("mixed_ml_series requires t >= 0");
    auto const e = effective(p);
    double const d = e.a1 - e.a2;
    double const x = e.c2 == 0.0 ? 0.0 : e.c2 * std::pow(t, d) / e.c1;
    double const y = y_scale * p.lambda * std::pow(t, e.a1) / e.c1;

    double sum = 0.0;
    double abs_sum = 0.0;
    int small_run = 0;
    for (int k = 0; k < kmax; ++k)
    {
        int const m = k + shift;
        if (m > 0 && x == 0.0)
            return sum;
        double const coef = m == 0 ? 1.0 : std::pow(-x, m);
        double const inner
            = ml3(MLParams(e.a1, beta0 + d * m, k + 1.0), -y);
        double const term = coef * inner;
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) <= 1e-16 * std::abs(sum))
        {
            if (++small_run >= 3)
            {
                if (abs_sum > 1e6 * std::abs(sum))
                    throw NonConvergence(
                        "Mittag-Leffler k-series cancels too strongly at t="
                        + std::to_string(t));
                return sum;
            }
        }
        else
        {
            small_run = 0;
        }
    }
    throw NonConvergence("Mittag-Leffler k-series not converged within kmax="
                         + std::to_string(kmax) + " terms at t="
                         + std::to_string(t));
}

CountingPath simulate_mfpp(MixedParams const& p, InversePath const& y,
                           Rng& rng)
{
    std::vector<std::int64_t> counts(y.values.size(), 0);
    double next = standard_exponential(rng) / p.lambda;
    std::int64_t n = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
    {
        while (next <= y.values[i])
        {
            ++n;
            next += standard_exponential(rng) / p.lambda;
        }
        counts[i] = n;
    }
    return {y.grid, std::move(counts)};
}

double interarrival_lt(MixedParams const& p, double s)
{
    if (!(s > 0))
        throw DomainError("interarrival_lt requires s > 0");
    double den = p.lambda;
    if (p.c1 > 0)
        den += p.c1 * std::pow(s, p.alpha1);
    if (p.c2 > 0)
        den += p.c2 * std::pow(s, p.alpha2);
    return p.lambda / den;
}

double interarrival_density(MixedParams const& p, double t, int kmax)
{
    if (!(t > 0))
        throw DomainError("interarrival_density requires t > 0");
    auto const e = effective(p);
    return p.lambda * std::pow(t, e.a1 - 1) / e.c1
           * mixed_ml_series(p, t, e.a1, 0, 1.0, kmax);
}

double interarrival_cdf_lt(MixedParams const& p, double t, int order)
{
    return laplace_invert(
        [&](double s) { return interarrival_lt(p, s) / s; }, t, order);
}

double sample_interarrival(MixedParams const& p, Rng& rng)
{
    double const s = standard_exponential(rng) / p.lambda;
    return sample_subordinator_at(p, s, rng);
}

double state_prob_p0(MixedParams const& p, double t, int kmax)
{
    if (!(t >= 0))
        throw DomainError("state_prob_p0 requires t >= 0");
    if (t == 0)
        return 1.0;
    return mixed_ml_series(p, t, 1.0, 0, 1.0, kmax)
           - mixed_ml_series(p, t, 1.0, 1, 1.0, kmax);
}

double state_prob_lt(MixedParams const& p, int n, double s)
{
    if (n < 0)
        throw DomainError("state_prob_lt requires n >= 0");
    if (!(s > 0))
        throw DomainError("state_prob_lt requires s > 0");
    double num = 0.0;
    double den = p.lambda;
    if (p.c1 > 0)
    {
        num += p.c1 * std::pow(s, p.alpha1 - 1);
        den += p.c1 * std::pow(s, p.alpha1);
    }
    if (p.c2 > 0)
    {
        num += p.c2 * std::pow(s, p.alpha2 - 1);
        den += p.c2 * std::pow(s, p.alpha2);
    }
    return std::pow(p.lambda, n) * num / std::pow(den, n + 1);
}

GridFunction state_prob_pn_factor_f(MixedParams const& p, int n,
                                    Grid const& grid, int kmax)
{
    auto const e = effective(p);
    double const expo = n * (e.a1 - 1) / (n + 1.0);
    double const beta0 = (n * e.a1 + 1) / (n + 1.0);
    return GridFunction::sample(grid, [&](double t) {
        return std::pow(t, expo) * mixed_ml_series(p, t, beta0, 0, 1.0, kmax);
    });
}

GridFunction state_prob_pn_factor_g(MixedParams const& p, int n,
                                    Grid const& grid, int kmax)
{
    auto const e = effective(p);
    double const d = e.a1 - e.a2;
    double const expo = (n * (e.a1 - 1) + d) / (n + 1.0);
    double const beta0 = (n * e.a1 + d + 1) / (n + 1.0);
    return GridFunction::sample(grid, [&](double t) {
        return std::pow(t, expo) * mixed_ml_series(p, t, beta0, 0, 1.0, kmax);
    });
}

GridFunction state_prob_pn_grid(MixedParams const& p, int n, Grid const& grid,
                                int kmax)
{
    if (n < 0)
        throw DomainError("state_prob_pn requires n >= 0");
    auto const e = effective(p);
    double const scale = std::pow(p.lambda, n) / std::pow(e.c1, n + 1);
    auto const ff = convolve_power(state_prob_pn_factor_f(p, n, grid, kmax),
                                   n + 1);
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = scale * e.c1 * ff[i];
    if (e.c2 > 0)
    {
        auto const gg = convolve_power(
            state_prob_pn_factor_g(p, n, grid, kmax), n + 1);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += scale * e.c2 * gg[i];
    }
    return GridFunction(grid, std::move(out));
}

double state_prob_pn(MixedParams const& p, int n, double t, PnMethod method,
                     double grid_step)
{
    if (n < 0)
        throw DomainError("state_prob_pn requires n >= 0");
    if (!(t >= 0))
        throw DomainError("state_prob_pn requires t >= 0");
    if (t == 0)
        return n == 0 ? 1.0 : 0.0;
    if (method == PnMethod::laplace)
    {
        return laplace_invert(
            [&](double s) { return state_prob_lt(p, n, s); }, t, 14);
    }
    auto const steps = static_cast<std::size_t>(
        std::max(2.0, std::ceil(t / grid_step - 1e-9)));
    Grid const g(t / double(steps), steps);
    return state_prob_pn_grid(p, n, g).values.back();
}

double state_prob_pn_checked(MixedParams const& p, int n, double t, double tol)
{
    double const a = state_prob_pn(p, n, t, PnMethod::laplace);
    double const b = state_prob_pn(p, n, t, PnMethod::convolution);
    if (std::abs(a - b) > tol)
    {
        throw CrossCheckFailure("p_" + std::to_string(n) + "(" + std::to_string(t)
                                + "): laplace " + std::to_string(a)
                                + " vs convolution " + std::to_string(b));
    }
    return a;
}

double pgf(MixedParams const& p, double z, double t, int kmax)
{
    if (!(z >= 0 && z <= 1))
        throw DomainError("pgf requires z in [0,1]");
    if (!(t >= 0))
        throw DomainError("pgf requires t >= 0");
    if (t == 0 || z == 1)
        return 1.0;
    return mixed_ml_series(p, t, 1.0, 0, 1 - z, kmax)
           - mixed_ml_series(p, t, 1.0, 1, 1 - z, kmax);
}

double mfpp_mean(MixedParams const& p, double t)
{
    return p.lambda * mean_inverse(p, t);
}

double mfpp_var(MixedParams const& p, double t, double var_y)
{
    return p.lambda * mean_inverse(p, t) + p.lambda * p.lambda * var_y;
}

double mfpp_cov(MixedParams const& p, double s, double t, double cov_y)
{
    if (s > t)
        throw DomainError("mfpp_cov requires s <= t");
    return p.lambda * mean_inverse(p, s) + p.lambda * p.lambda * cov_y;
}

}  // namespace mfrisk
