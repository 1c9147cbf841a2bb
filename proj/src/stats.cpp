#include "mfrisk/stats.hpp"

#include <algorithm>
#include <cmath>

#include "mfrisk/errors.hpp"

namespace mfrisk
{
namespace
{
double pairwise(double const* x, std::size_t n)
{
    if (n <= 32)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    std::size_t const h = n / 2;
    return pairwise(x, h) + pairwise(x + h, n - h);
}
}  // namespace

bool Estimate::within(double target, double k) const
{
    return std::abs(value - target) <= k * std_error;
}

double pairwise_sum(std::vector<double> const& x)
{
    return pairwise(x.data(), x.size());
}

double sample_mean(std::vector<double> const& x)
{
    if (x.empty())
        throw DomainError("mean of an empty sample");
    return pairwise_sum(x) / double(x.size());
}

Estimate estimate_from_influence(double value, std::vector<double> const& psi)
{
    std::size_t const n = psi.size();
    if (n < 2)
        throw DomainError("standard error needs at least two paths");
    double const m = sample_mean(psi);
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i)
        sq[i] = (psi[i] - m) * (psi[i] - m);
    double const var = pairwise_sum(sq) / double(n - 1);
    return {value, std::sqrt(var / double(n)), n, 0};
}

Estimate estimate_mean(std::vector<double> const& x)
{
    double const m = sample_mean(x);
    std::vector<double> psi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        psi[i] = x[i] - m;
    return estimate_from_influence(m, psi);
}

Moment2 variance_influence(std::vector<double> const& x)
{
    double const m = sample_mean(x);
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        sq[i] = (x[i] - m) * (x[i] - m);
    double const v = pairwise_sum(sq) / double(x.size());
    for (auto& s : sq)
        s -= v;
    return {v, std::move(sq)};
}

Moment2 covariance_influence(std::vector<double> const& x,
                             std::vector<double> const& y)
{
    if (x.size() != y.size())
        throw DomainError("covariance of samples with different sizes");
    double const mx = sample_mean(x), my = sample_mean(y);
    std::vector<double> pr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        pr[i] = (x[i] - mx) * (y[i] - my);
    double const c = pairwise_sum(pr) / double(x.size());
    for (auto& v : pr)
        v -= c;
    return {c, std::move(pr)};
}

Estimate estimate_variance(std::vector<double> const& x)
{
    auto m = variance_influence(x);
    return estimate_from_influence(m.value, m.psi);
}

Estimate estimate_covariance(std::vector<double> const& x,
                             std::vector<double> const& y)
{
    auto m = covariance_influence(x, y);
    return estimate_from_influence(m.value, m.psi);
}

Estimate estimate_proportion(std::size_t hits, std::size_t n)
{
    if (n == 0)
        throw DomainError("proportion of zero trials");
    double const p = double(hits) / double(n);
    return {p, std::sqrt(p * (1 - p) / double(n)), n, 0};
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    double const na = double(a.size()), nb = double(b.size());
    while (i < a.size() && j < b.size())
    {
        double const x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_statistic(std::vector<double> sample,
                    std::function<double(double)> const& cdf)
{
    std::sort(sample.begin(), sample.end());
    double const n = double(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
    {
        double const f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_pvalue(double d, double n_eff)
{
    double const sn = std::sqrt(n_eff);
    double const lam = (sn + 0.12 + 0.11 / sn) * d;
    if (lam < 0.2)
        return 1.0;  // series converges slowly here; p is 1 to 1e-9
    double s = 0.0;
    for (int k = 1; k <= 100; ++k)
    {
        double const term = std::exp(-2.0 * k * k * lam * lam);
        s += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-16)
            break;
    }
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace mfrisk
