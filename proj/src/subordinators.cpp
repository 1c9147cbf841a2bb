#include "mfrisk/subordinators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mfrisk/errors.hpp"
#include "mfrisk/mittag_leffler.hpp"

namespace mfrisk
{
namespace
{
bool in_open_unit(double a)
{
    return a > 0 && a < 1;
}
}  // namespace

MixedParams::MixedParams(double a1, double a2, double w1, double w2,
                         double lam)
    : alpha1(a1), alpha2(a2), c1(w1), c2(w2), lambda(lam)
{
    if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(w1)
        || !std::isfinite(w2) || !std::isfinite(lam))
        throw DomainError("MixedParams: non-finite value");
    if (!(lam > 0))
        throw DomainError("MixedParams: lambda must be positive");
    if (w1 < 0 || w2 < 0)
        throw DomainError("MixedParams: weights must be non-negative");
    if (std::abs(w1 + w2 - 1.0) > 1e-12)
        throw DomainError("MixedParams: c1 + c2 must equal 1");
    if (w1 > 0 && w2 > 0)
    {
        if (!(in_open_unit(a2) && a2 < a1 && a1 < 1))
            throw DomainError("MixedParams: need 0 < alpha2 < alpha1 < 1");
    }
    else if (!in_open_unit(w2 == 0 ? a1 : a2))
    {
        throw DomainError("MixedParams: active exponent must lie in (0,1)");
    }
}

double sample_stable_increment(double alpha, double dt, Rng& rng)
{
    double const u = std::numbers::pi * uniform_open(rng);
    double const e = standard_exponential(rng);
    double const log_x = std::log(std::sin(alpha * u))
                         - std::log(std::sin(u)) / alpha
                         + (1 - alpha) / alpha
                               * (std::log(std::sin((1 - alpha) * u))
                                  - std::log(e));
    return std::pow(dt, 1 / alpha) * std::exp(log_x);
}

SubordinatorStepper::SubordinatorStepper(MixedParams const& p, double h_op)
    : h_(h_op), a1_(p.alpha1), a2_(p.alpha2)
{
    if (!(h_op > 0))
        throw DomainError("operational step must be positive");
    if (p.c1 > 0)
        scale1_ = std::pow(p.c1 * h_op, 1 / p.alpha1);
    if (p.c2 > 0)
        scale2_ = std::pow(p.c2 * h_op, 1 / p.alpha2);
}

double SubordinatorStepper::next(Rng& rng)
{
    double d = 0.0;
    if (scale1_ > 0)
        d += scale1_ * sample_stable_increment(a1_, 1.0, rng);
    if (scale2_ > 0)
        d += scale2_ * sample_stable_increment(a2_, 1.0, rng);
    return d;
}

double sample_subordinator_at(MixedParams const& p, double s, Rng& rng)
{
    if (s == 0)
        return 0.0;
    SubordinatorStepper st(p, s);
    return st.next(rng);
}

SubordinatorPath sample_mixed_path(MixedParams const& p, Grid const& op_grid,
                                   Rng& rng)
{
    SubordinatorStepper st(p, op_grid.step());
    std::vector<double> v(op_grid.size(), 0.0);
    for (std::size_t j = 1; j < v.size(); ++j)
        v[j] = v[j - 1] + st.next(rng);
    return {op_grid, std::move(v)};
}

InversePath inverse_path(SubordinatorPath const& d, Grid const& t_grid)
{
    auto const& dv = d.values;
    if (dv.empty() || !(dv.back() > t_grid.back()))
        throw ExtendNeeded("subordinator path ends at "
                           + std::to_string(dv.empty() ? 0.0 : dv.back())
                           + ", below the horizon "
                           + std::to_string(t_grid.back()));
    double const h = d.grid.step();
    std::vector<double> y(t_grid.size(), 0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        double const t = t_grid[i];
        while (!(dv[j + 1] > t))
            ++j;
        // dv[j] <= t < dv[j+1]
        y[i] = (double(j) + (t - dv[j]) / (dv[j + 1] - dv[j])) * h;
    }
    return {t_grid, std::move(y)};
}

InversePath sample_inverse_path(MixedParams const& p, Grid const& t_grid,
                                double h_op, Rng& rng)
{
    SubordinatorStepper st(p, h_op);
    std::vector<double> y(t_grid.size(), 0.0);
    std::size_t i = 0;
    std::size_t j = 0;
    double d_lo = 0.0;
    while (i < y.size())
    {
        double const d_hi = d_lo + st.next(rng);
        while (i < y.size() && t_grid[i] < d_hi)
        {
            y[i] = (double(j) + (t_grid[i] - d_lo) / (d_hi - d_lo)) * h_op;
            ++i;
        }
        d_lo = d_hi;
        ++j;
    }
    return {t_grid, std::move(y)};
}

double mean_inverse(MixedParams const& p, double t)
{
    if (!(t >= 0))
        throw DomainError("mean_inverse requires t >= 0");
    if (t == 0)
        return 0.0;
    if (p.degenerate())
    {
        double const a = p.single_alpha();
        return std::pow(t, a) * rgamma(a + 1);
    }
    double const d = p.alpha1 - p.alpha2;
    return std::pow(t, p.alpha1) / p.c1
           * ml2(d, p.alpha1 + 1, -p.c2 * std::pow(t, d) / p.c1);
}

double mean_inverse_asymptotic(MixedParams const& p, double t, Regime regime)
{
    if (!(t > 0))
        throw DomainError("mean_inverse_asymptotic requires t > 0");
    if (regime == Regime::small)
    {
        if (p.c1 == 0)
            throw DomainError("small-t asymptote needs c1 > 0");
        return std::pow(t, p.alpha1) / (p.c1 * std::tgamma(p.alpha1 + 1));
    }
    if (p.c2 == 0)
        throw DomainError("large-t asymptote needs c2 > 0");
    return std::pow(t, p.alpha2) / (p.c2 * std::tgamma(p.alpha2 + 1));
}

double var_inverse_asymptotic(MixedParams const& p, double t)
{
    if (p.c2 == 0)
        throw DomainError("var_inverse_asymptotic needs c2 > 0");
    double const a = p.alpha2;
    double const g1 = std::tgamma(a + 1);
    return std::pow(t, 2 * a) / (p.c2 * p.c2)
           * (2 / std::tgamma(2 * a + 1) - 1 / (g1 * g1));
}

double cov_inverse_fixed_s(MixedParams const& p, double s)
{
    if (p.c1 == 0)
        throw DomainError("cov_inverse_fixed_s needs c1 > 0");
    if (!(s >= 0))
        throw DomainError("cov_inverse_fixed_s requires s >= 0");
    if (s == 0)
        return 0.0;
    double const a1 = p.alpha1;
    if (p.c2 == 0)
        return std::pow(s, 2 * a1) * rgamma(2 * a1 + 1);
    double const d = a1 - p.alpha2;
    return std::pow(s, 2 * a1) / (p.c1 * p.c1)
           * ml3(MLParams(d, 2 * a1 + 1, 2.0), -p.c2 * std::pow(s, d) / p.c1);
}

double cov_inverse_K(MixedParams const& p, double s)
{
    if (p.degenerate())
        throw DomainError("cov_inverse_K needs c1 > 0 and c2 > 0");
    if (!(s >= 0))
        throw DomainError("cov_inverse_K requires s >= 0");
    if (s == 0)
        return 0.0;
    double const a1 = p.alpha1;
    double const d = a1 - p.alpha2;
    double const x = -p.c2 * std::pow(s, d) / p.c1;
    // sum_k (k d + a1) x^k / Gamma(k d + a1 + 2)
    //   = E_{d, a1+1}(x) - E_{d, a1+2}(x)
    double const series = ml2(d, a1 + 1, x) - ml2(d, a1 + 2, x);
    return std::pow(s, a1 + 1) / (p.c1 * p.c2 * std::tgamma(p.alpha2))
           * series;
}

double cov_inverse_corrected(MixedParams const& p, double s, double t)
{
    if (!(t > 0))
        throw DomainError("cov_inverse_corrected requires t > 0");
    return cov_inverse_fixed_s(p, s)
           - std::pow(t, p.alpha2 - 1) * cov_inverse_K(p, s);
}

}  // namespace mfrisk
