#include "mfrisk/compound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mfrisk/errors.hpp"

namespace mfrisk
{
DiscreteClaimLaw::DiscreteClaimLaw(std::vector<double> probs)
    : probs_(std::move(probs))
{
    if (probs_.empty())
        throw DomainError("claim law needs at least one support point");
    double s = 0.0;
    for (double v : probs_)
    {
        if (!(v >= 0) || !std::isfinite(v))
            throw DomainError("claim probabilities must be non-negative");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12)
        throw DomainError("claim probabilities sum to " + std::to_string(s));
    cdf_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cdf_.begin());
    cdf_.back() = 1.0;
}

DiscreteClaimLaw DiscreteClaimLaw::degenerate(int value)
{
    if (value < 1)
        throw DomainError("claim values must be positive integers");
    std::vector<double> pr(value, 0.0);
    pr.back() = 1.0;
    return DiscreteClaimLaw(std::move(pr));
}

double DiscreteClaimLaw::mean() const
{
    double m = 0.0;
    for (int i = 1; i <= max_value(); ++i)
        m += i * prob(i);
    return m;
}

double DiscreteClaimLaw::second_moment() const
{
    double m = 0.0;
    for (int i = 1; i <= max_value(); ++i)
        m += double(i) * i * prob(i);
    return m;
}

int DiscreteClaimLaw::sample(Rng& rng) const
{
    double const u = uniform_open(rng);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    return int(it - cdf_.begin()) + 1;
}

std::vector<std::vector<double>> DiscreteClaimLaw::convolution_table(
    int n_max) const
{
    std::vector<std::vector<double>> r(n_max + 1,
                                       std::vector<double>(n_max + 1, 0.0));
    r[0][0] = 1.0;
    for (int k = 1; k <= n_max; ++k)
    {
        for (int n = k; n <= n_max; ++n)
        {
            double acc = 0.0;
            for (int i = 1; i <= std::min(n, max_value()); ++i)
                acc += prob(i) * r[k - 1][n - i];
            r[k][n] = acc;
        }
    }
    return r;
}

SamplePath simulate_compound(CountingPath const& n, DiscreteClaimLaw const& law,
                             Rng& rng)
{
    std::vector<double> v(n.counts.size(), 0.0);
    std::int64_t drawn = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        for (; drawn < n.counts[i]; ++drawn)
            total += law.sample(rng);
        v[i] = total;
    }
    return {n.grid, std::move(v)};
}

double compound_state_prob(MixedParams const& p, DiscreteClaimLaw const& law,
                           int n, double t, PnMethod method)
{
    if (n < 0)
        throw DomainError("compound_state_prob requires n >= 0");
    if (n == 0)
        return state_prob_p0(p, t);
    auto const r = law.convolution_table(n);
    double q = 0.0;
    for (int k = 1; k <= n; ++k)
    {
        if (r[k][n] != 0.0)
            q += r[k][n] * state_prob_pn(p, k, t, method);
    }
    return q;
}

std::vector<GridFunction> compound_state_prob_grid(MixedParams const& p,
                                                   DiscreteClaimLaw const& law,
                                                   int n, Grid const& grid)
{
    if (n < 0)
        throw DomainError("compound_state_prob_grid requires n >= 0");
    auto const r = law.convolution_table(n);
    std::vector<GridFunction> pk;
    for (int k = 0; k <= n; ++k)
        pk.push_back(state_prob_pn_grid(p, k, grid));
    std::vector<GridFunction> q;
    q.push_back(pk[0]);
    for (int m = 1; m <= n; ++m)
    {
        std::vector<double> v(grid.size(), 0.0);
        for (int k = 1; k <= m; ++k)
        {
            if (r[k][m] == 0.0)
                continue;
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] += r[k][m] * pk[k][i];
        }
        q.emplace_back(grid, std::move(v));
    }
    return q;
}

namespace
{
std::vector<double> fractional_operator(MixedParams const& p,
                                        GridFunction const& f)
{
    std::vector<double> out(f.size(), 0.0);
    if (p.c1 > 0)
    {
        auto const d1 = caputo_l1(f, p.alpha1);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += p.c1 * d1[i];
    }
    if (p.c2 > 0)
    {
        auto const d2 = caputo_l1(f, p.alpha2);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] += p.c2 * d2[i];
    }
    return out;
}
}  // namespace

GridFunction compound_fde_residual(MixedParams const& p,
                                   DiscreteClaimLaw const& law,
                                   std::vector<GridFunction> const& q)
{
    if (q.empty())
        throw DomainError("compound_fde_residual needs q_0..q_n");
    int const n = int(q.size()) - 1;
    auto out = fractional_operator(p, q[n]);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        double s = 0.0;
        for (int j = 1; j <= n; ++j)
            s += law.prob(j) * q[n - j][i];
        out[i] += p.lambda * (q[n][i] - s);
    }
    return GridFunction(q[n].grid, std::move(out));
}

GridFunction compound_fde_residual(MixedParams const& p,
                                   DiscreteClaimLaw const& law, int n,
                                   Grid const& grid)
{
    return compound_fde_residual(p, law,
                                 compound_state_prob_grid(p, law, n, grid));
}

double compound_mean(MixedParams const& p, DiscreteClaimLaw const& law,
                     double t)
{
    return p.lambda * mean_inverse(p, t) * law.mean();
}

double compound_var(MixedParams const& p, DiscreteClaimLaw const& law,
                    double t, double var_y)
{
    double const m = law.mean();
    return p.lambda * mean_inverse(p, t) * law.second_moment()
           + p.lambda * p.lambda * var_y * m * m;
}

double compound_overdispersion(MixedParams const& p,
                               DiscreteClaimLaw const& law, double t,
                               double var_y)
{
    double const m = law.mean();
    return p.lambda * mean_inverse(p, t) * (law.second_moment() - m)
           + p.lambda * p.lambda * var_y * m * m;
}

GridFunction mfpp_fde_residual(MixedParams const& p, GridFunction const& pn,
                               GridFunction const* pn_minus_1)
{
    if (pn_minus_1 && !pn_minus_1->grid.same_as(pn.grid))
        throw GridError("mfpp_fde_residual: grids differ");
    auto out = fractional_operator(p, pn);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += p.lambda * (pn[i] - (pn_minus_1 ? (*pn_minus_1)[i] : 0.0));
    return GridFunction(pn.grid, std::move(out));
}

}  // namespace mfrisk
