#include "mfrisk/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mfrisk/ensemble.hpp"
#include "mfrisk/errors.hpp"
#include "mfrisk/log.hpp"
#include "mfrisk/mfpp.hpp"
#include "mfrisk/stats.hpp"

namespace mfrisk
{
std::string to_string(RuinMethod m)
{
    switch (m)
    {
        case RuinMethod::monte_carlo: return "monte_carlo";
        case RuinMethod::laplace_inversion: return "laplace_inversion";
        case RuinMethod::density_integral: return "density_integral";
        case RuinMethod::asymptotic: return "asymptotic";
    }
    return "unknown";
}

namespace
{
struct RuinRecord
{
    bool ruined = false;
    double claims_at_horizon = 0.0;
};

}  // namespace

RuinSandwich ruin_sandwich_mc(MixedParams const& p, RiskConfig const& cfg,
                              ClaimModel const& claims, double horizon,
                              std::size_t n_paths, std::uint64_t master_seed,
                              unsigned workers)
{
    if (cfg.variant != SurplusVariant::mfrp2)
        throw ConfigError("ruin estimation is defined for the MFRP-II surplus");
    cfg.validate();
    if (!(horizon > 0))
        throw DomainError("ruin horizon must be positive");
    double const u = cfg.u, c = cfg.c;
    auto recs = run_ensemble<RuinRecord>(
        n_paths, master_seed, workers, [&](Rng& rng, std::size_t) {
            RuinRecord r;
            double t = 0.0, s = 0.0;
            while (true)
            {
                t += sample_interarrival(p, rng);
                if (t > horizon)
                    break;
                s += claims.sample(rng);
                if (!r.ruined && u + c * t - s < 0)
                    r.ruined = true;
            }
            r.claims_at_horizon = s;
            return r;
        });
    std::size_t ruined = 0, above_line = 0, above_u = 0;
    for (auto const& r : recs)
    {
        ruined += r.ruined;
        above_line += r.claims_at_horizon > u + c * horizon;
        above_u += r.claims_at_horizon > u;
    }
    auto const e = estimate_proportion(ruined, n_paths);
    auto const lo = estimate_proportion(above_line, n_paths);
    auto const hi = estimate_proportion(above_u, n_paths);
    return {{e.value, e.std_error, n_paths, horizon, RuinMethod::monte_carlo},
            lo.value,
            hi.value,
            lo.std_error,
            hi.std_error};
}

RuinEstimate ruin_prob_mc(MixedParams const& p, RiskConfig const& cfg,
                          ClaimModel const& claims, double horizon,
                          std::size_t n_paths, std::uint64_t master_seed,
                          unsigned workers)
{
    return ruin_sandwich_mc(p, cfg, claims, horizon, n_paths, master_seed,
                            workers)
        .ruin;
}

GridFunction ruin_density_exp_grid(MixedParams const& p, double u, double c,
                                   double mu_rate, Grid const& grid,
                                   int n_terms)
{
    if (!(u > 0) || !(c > 0) || !(mu_rate > 0))
        throw DomainError("ruin density needs u, c, mu_rate > 0");
    std::size_t const m = grid.size();
    auto fw = GridFunction::sample(grid, [&](double t) {
        return t > 0 ? interarrival_density(p, t)
                     : std::numeric_limits<double>::infinity();
    });
    std::vector<double> sum(m, 0.0);
    GridFunction conv = fw;
    for (int n = 0; n < n_terms; ++n)
    {
        if (n > 0)
            conv = convolve(conv, fw);
        double max_term = 0.0, max_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
            double const t = grid[i];
            double const w = u + c * t;
            double const log_coef = n * std::log(mu_rate) + (n - 1) * std::log(w)
                                    - std::lgamma(n + 1.0) - mu_rate * w;
            double const term
                = std::exp(log_coef) * (u + c * t / (n + 1)) * conv[i];
            sum[i] += term;
            if (i > 0)
            {
                max_term = std::max(max_term, std::abs(term));
                max_sum = std::max(max_sum, std::abs(sum[i]));
            }
        }
        if (max_term <= 1e-14 * max_sum)
            return GridFunction(grid, std::move(sum));
    }
    throw NonConvergence("ruin density series needs more than "
                         + std::to_string(n_terms) + " terms");
}

double ruin_density_exp(MixedParams const& p, double u, double c,
                        double mu_rate, double t, int n_terms, Grid const& grid)
{
    auto const i = grid.index_of(t);
    return ruin_density_exp_grid(p, u, c, mu_rate, grid, n_terms)[i];
}

RuinEstimate ruin_prob_density_integral(MixedParams const& p, double u,
                                        double c, double mu_rate, double t,
                                        double h)
{
    if (!(t > 0))
        throw DomainError("ruin horizon must be positive");
    auto integral = [&](double step) {
        auto const n = static_cast<std::size_t>(
            std::max(4.0, std::ceil(t / step - 1e-9)));
        Grid const g(t / double(n), n);
        auto const f = ruin_density_exp_grid(p, u, c, mu_rate, g);
        return cumulative_integral(f).values.back();
    };
    double const fine = integral(h);
    double const coarse = integral(2 * h);
    return {fine, std::abs(fine - coarse), 0, t, RuinMethod::density_integral};
}

double ruin_lt_root(MixedParams const& p, double c, double mu_rate, double s)
{
    if (!(s > 0))
        throw DomainError("ruin transform requires s > 0");
    auto map = [&](double y) {
        double const w = s + c * mu_rate * (1 - y);
        double den = p.lambda;
        if (p.c1 > 0)
            den += p.c1 * std::pow(w, p.alpha1);
        if (p.c2 > 0)
            den += p.c2 * std::pow(w, p.alpha2);
        return p.lambda / den;
    };
    auto const brackets = root_brackets(map, 0.0, 1.0);
    if (brackets.size() > 1)
        log().warn("ruin transform: {} root brackets in (0,1) at s={}",
                   brackets.size(), s);
    return fixed_point(map, 0.5, 1e-14, 0.5);
}

double ruin_lt(MixedParams const& p, double u, double c, double mu_rate,
               double s)
{
    double const y = ruin_lt_root(p, c, mu_rate, s);
    return y * std::exp(-u * mu_rate * (1 - y)) / s;
}

RuinEstimate ruin_prob_lt(MixedParams const& p, double u, double c,
                          double mu_rate, double t, int order)
{
    auto F = [&](double s) { return ruin_lt(p, u, c, mu_rate, s); };
    double const v = laplace_invert(F, t, order);
    double const v2 = laplace_invert(F, t, order - 2);
    return {v, std::abs(v - v2), 0, t, RuinMethod::laplace_inversion};
}

double ruin_asymptotic_subexp(MixedParams const& p, ClaimModel const& claims,
                              double u, double t)
{
    if (!claims.is_subexponential())
        throw NotSubexponential(
            "subexponential ruin asymptote needs a Pareto claim model");
    return p.lambda * mean_inverse(p, t) * claims.tail(u);
}

}  // namespace mfrisk
