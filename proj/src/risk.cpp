#include "mfrisk/risk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "mfrisk/ensemble.hpp"
#include "mfrisk/errors.hpp"
#include "mfrisk/log.hpp"
#include "mfrisk/stats.hpp"

namespace mfrisk
{
//---------------------------------------------------------------------------//
// ClaimModel
//---------------------------------------------------------------------------//
ClaimModel ClaimModel::exponential(double rate)
{
    if (!(rate > 0) || !std::isfinite(rate))
        throw DomainError("exponential claim rate must be positive");
    return ClaimModel(Kind::exponential, rate, 0.0);
}

ClaimModel ClaimModel::pareto(double shape, double scale)
{
    if (!(shape > 1) || !(scale > 0))
        throw DomainError("Pareto claims need shape > 1 and scale > 0");
    return ClaimModel(Kind::pareto, shape, scale);
}

ClaimModel ClaimModel::discrete(DiscreteClaimLaw law)
{
    ClaimModel m(Kind::discrete, 0.0, 0.0);
    m.law_ = std::move(law);
    return m;
}

ClaimModel ClaimModel::degenerate(double value)
{
    if (!(value > 0))
        throw DomainError("degenerate claim value must be positive");
    return ClaimModel(Kind::degenerate, value, 0.0);
}

double ClaimModel::mean() const
{
    switch (kind_)
    {
        case Kind::exponential: return 1.0 / a_;
        case Kind::pareto: return a_ * b_ / (a_ - 1);
        case Kind::discrete: return law_->mean();
        case Kind::degenerate: return a_;
    }
    return 0.0;
}

double ClaimModel::second_moment() const
{
    switch (kind_)
    {
        case Kind::exponential: return 2.0 / (a_ * a_);
        case Kind::pareto:
            if (!(a_ > 2))
                throw DomainError("Pareto second moment needs shape > 2");
            return a_ * b_ * b_ / (a_ - 2);
        case Kind::discrete: return law_->second_moment();
        case Kind::degenerate: return a_ * a_;
    }
    return 0.0;
}

double ClaimModel::tail(double x) const
{
    switch (kind_)
    {
        case Kind::exponential: return x <= 0 ? 1.0 : std::exp(-a_ * x);
        case Kind::pareto: return x <= b_ ? 1.0 : std::pow(b_ / x, a_);
        case Kind::discrete:
        {
            double s = 0.0;
            for (int i = 1; i <= law_->max_value(); ++i)
                if (i > x)
                    s += law_->prob(i);
            return s;
        }
        case Kind::degenerate: return x < a_ ? 1.0 : 0.0;
    }
    return 0.0;
}

double ClaimModel::quantile(double q) const
{
    if (!(q > 0 && q < 1))
        throw DomainError("quantile level must be in (0,1)");
    switch (kind_)
    {
        case Kind::exponential: return -std::log1p(-q) / a_;
        case Kind::pareto: return b_ * std::pow(1 - q, -1 / a_);
        case Kind::discrete:
        {
            double c = 0.0;
            for (int i = 1; i <= law_->max_value(); ++i)
            {
                c += law_->prob(i);
                if (c >= q)
                    return i;
            }
            return law_->max_value();
        }
        case Kind::degenerate: return a_;
    }
    return 0.0;
}

double ClaimModel::sample(Rng& rng) const
{
    switch (kind_)
    {
        case Kind::exponential: return standard_exponential(rng) / a_;
        case Kind::pareto: return b_ * std::pow(uniform_open(rng), -1 / a_);
        case Kind::discrete: return law_->sample(rng);
        case Kind::degenerate: return a_;
    }
    return 0.0;
}

//---------------------------------------------------------------------------//
// Surplus
//---------------------------------------------------------------------------//
void RiskConfig::validate() const
{
    if (!(u > 0))
        throw DomainError("initial capital u must be positive");
    if (!(mu > 0))
        throw DomainError("claim mean mu must be positive");
    if (!std::isfinite(rho))
        throw DomainError("safety loading must be finite");
    if (variant == SurplusVariant::mfrp2 && !(c > 0))
        throw DomainError("premium rate c must be positive for MFRP-II");
    // warn once per value, since simulate_surplus validates on every path
    static std::atomic<double> last_warned{std::numeric_limits<double>::quiet_NaN()};
    if (variant != SurplusVariant::mfrp2 && rho < 0 && last_warned.exchange(rho) != rho)
        log().warn("safety loading rho = {} < 0 violates the net profit condition",
                   rho);
}

SurplusPath simulate_surplus(MixedParams const& p, RiskConfig const& cfg,
                             ClaimModel const& claims, InversePath const& y,
                             Rng& rng)
{
    auto const n = simulate_mfpp(p, y, rng);
    return simulate_surplus(p, cfg, claims, y, n, rng);
}

SurplusPath simulate_surplus(MixedParams const& p, RiskConfig const& cfg,
                             ClaimModel const& claims, InversePath const& y,
                             CountingPath const& n, Rng& rng)
{
    if (!n.grid.same_as(y.grid))
        throw GridError("counting path and inverse path grids differ");
    cfg.validate();
    if (cfg.variant != SurplusVariant::mfrp2
        && std::abs(claims.mean() - cfg.mu) > 1e-9 * std::max(1.0, cfg.mu))
    {
        throw ConfigMismatch("claim model mean " + std::to_string(claims.mean())
                             + " differs from mu = " + std::to_string(cfg.mu));
    }
    std::vector<double> v(n.counts.size());
    double const rate = cfg.mu * (1 + cfg.rho) * p.lambda;
    std::int64_t drawn = 0;
    double total = 0.0;
    std::optional<std::size_t> ruin;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        for (; drawn < n.counts[i]; ++drawn)
            total += claims.sample(rng);
        double const t = y.grid[i];
        double premium = 0.0;
        switch (cfg.variant)
        {
            case SurplusVariant::mfrp: premium = rate * y.values[i]; break;
            case SurplusVariant::mfrp_variant:
                premium = rate * mean_inverse(p, t);
                break;
            case SurplusVariant::mfrp2: premium = cfg.c * t; break;
        }
        v[i] = cfg.u + premium - total;
        if (!ruin && v[i] < 0)
            ruin = i;
    }
    return {y.grid, std::move(v), ruin};
}

double surplus_mean(MixedParams const& p, RiskConfig const& cfg,
                    ClaimModel const& claims, double t)
{
    double const u_t = mean_inverse(p, t);
    if (cfg.variant == SurplusVariant::mfrp2)
        return cfg.u + cfg.c * t - claims.mean() * p.lambda * u_t;
    return cfg.u + cfg.mu * cfg.rho * p.lambda * u_t;
}

namespace
{
// Largest h with every t an integer multiple (to 1e-9 relative).
double common_step(std::vector<double> const& ts)
{
    double h = 0.0;
    for (double t : ts)
    {
        double a = std::max(h, t), b = std::min(h, t);
        while (b > 1e-9 * a)
        {
            double const r = std::fmod(a, b);
            a = b;
            b = (r > b - 1e-9 * a) ? 0.0 : r;
        }
        h = a;
    }
    return h;
}
}  // namespace

MartingaleReport martingale_check(MixedParams const& p, RiskConfig const& cfg,
                                  ClaimModel const& claims,
                                  std::vector<double> const& t_list,
                                  std::size_t n_paths,
                                  std::uint64_t master_seed, unsigned workers,
                                  double h_op)
{
    if (t_list.empty())
        throw DomainError("martingale_check needs at least one time");
    double const h = common_step(t_list);
    double const t_end = *std::max_element(t_list.begin(), t_list.end());
    Grid const grid = Grid::to(t_end, h);
    std::vector<std::size_t> idx;
    for (double t : t_list)
        idx.push_back(grid.index_of(t));

    auto recs = run_ensemble<std::vector<double>>(
        n_paths, master_seed, workers, [&](Rng& rng, std::size_t) {
            auto const y = sample_inverse_path(p, grid, h_op, rng);
            auto const r = simulate_surplus(p, cfg, claims, y, rng);
            std::vector<double> out;
            for (auto i : idx)
                out.push_back(r.values[i]);
            return out;
        });

    MartingaleReport rep{{}, true, true, true};
    for (std::size_t k = 0; k < t_list.size(); ++k)
    {
        std::vector<double> x(n_paths);
        for (std::size_t i = 0; i < n_paths; ++i)
            x[i] = recs[i][k] - cfg.u;
        auto const e = estimate_mean(x);
        rep.rows.push_back({t_list[k], e.value, e.std_error});
        if (std::abs(e.value) > 3 * e.std_error)
            rep.zero_within_3se = false;
        if (k > 0)
        {
            double const prev = rep.rows[k - 1].mean_minus_u;
            if (!(e.value > prev))
                rep.monotone_increasing = false;
            if (!(e.value < prev))
                rep.monotone_decreasing = false;
        }
    }
    return rep;
}

double mfrp_cov(MixedParams const& p, RiskConfig const& cfg,
                ClaimModel const& claims, double s, double t, double cov_y,
                double mean_n_s)
{
    if (s > t)
        throw DomainError("mfrp_cov requires s <= t");
    double const k = cfg.mu * p.lambda * cfg.rho;
    return k * k * cov_y + claims.second_moment() * mean_n_s;
}

double mfrp2_cov(MixedParams const& p, ClaimModel const& claims, double s,
                 double t, double cov_y, double mean_n_s)
{
    if (s > t)
        throw DomainError("mfrp2_cov requires s <= t");
    double const m = claims.mean();
    return claims.second_moment() * mean_n_s
           + p.lambda * p.lambda * m * m * cov_y;
}

SamplePath increments(SurplusPath const& path, double delta)
{
    auto const k = path.grid.index_of(delta);
    if (k == 0)
        throw GridError("increment lag must be a positive grid multiple");
    std::size_t const n = path.values.size() - k;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = path.values[i + k] - path.values[i];
    return {Grid(path.grid.step(), n - 1), std::move(z)};
}

double lrd_exponent(std::vector<std::pair<double, double>> const& corr_values)
{
    if (corr_values.size() < 2)
        throw FitError("exponent fit needs at least two points");
    double tmin = corr_values.front().first, tmax = tmin;
    std::vector<double> lx, ly;
    for (auto const& [t, c] : corr_values)
    {
        if (!(c > 0) || !(t > 0))
            throw FitError("exponent fit needs positive times and correlations");
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
        lx.push_back(std::log(t));
        ly.push_back(std::log(c));
    }
    if (tmax < 100 * tmin * (1 - 1e-12))
        throw FitError("exponent fit needs t spanning at least two decades");
    double const mx = sample_mean(lx), my = sample_mean(ly);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return -sxy / sxx;
}

double increment_var_leading(MixedParams const& p, ClaimModel const& claims,
                             double t, double delta)
{
    if (p.c2 == 0)
        throw DomainError("increment variance asymptote needs c2 > 0");
    return p.lambda * p.alpha2 * delta * claims.second_moment()
           * std::pow(t, p.alpha2 - 1) / (p.c2 * std::tgamma(p.alpha2 + 1));
}

double mfrp_corr_asymptotic(MixedParams const& p, RiskConfig const& cfg,
                            ClaimModel const& claims, double s, double t)
{
    double const k2 = std::pow(cfg.mu * p.lambda * cfg.rho, 2);
    double const ex2 = claims.second_moment();
    auto var_r = [&](double x) {
        return k2 * var_inverse_asymptotic(p, x)
               + ex2 * p.lambda * mean_inverse_asymptotic(p, x, Regime::large);
    };
    double const num
        = k2 * cov_inverse_fixed_s(p, s) + ex2 * p.lambda * mean_inverse(p, s);
    return num / std::sqrt(var_r(s) * var_r(t));
}

double increment_corr_asymptotic(MixedParams const& p, RiskConfig const& cfg,
                                 ClaimModel const& claims, double s,
                                 double delta, double t)
{
    double const k2 = std::pow(cfg.mu * p.lambda * cfg.rho, 2);
    double const a = p.alpha2;
    double const cov = k2 * (cov_inverse_K(p, s + delta) - cov_inverse_K(p, s))
                       * (std::pow(t, a - 1) - std::pow(t + delta, a - 1));
    return cov
           / std::sqrt(increment_var_leading(p, claims, s, delta)
                       * increment_var_leading(p, claims, t, delta));
}

DependenceExponents dependence_exponents(MixedParams const& p,
                                         RiskConfig const& cfg,
                                         ClaimModel const& claims, double s,
                                         double delta, double t_lo,
                                         double t_hi, int n_points)
{
    DependenceExponents out;
    for (int i = 0; i < n_points; ++i)
    {
        double const t
            = t_lo * std::pow(t_hi / t_lo, double(i) / (n_points - 1));
        out.lrd_curve.emplace_back(t, mfrp_corr_asymptotic(p, cfg, claims, s, t));
        out.srd_curve.emplace_back(
            t, increment_corr_asymptotic(p, cfg, claims, s, delta, t));
    }
    out.lrd = lrd_exponent(out.lrd_curve);
    out.srd = lrd_exponent(out.srd_curve);
    return out;
}

}  // namespace mfrisk
