#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mfrisk/compound.hpp"
#include "mfrisk/mfpp.hpp"
#include "mfrisk/subordinators.hpp"

namespace mfrisk
{
//! Continuous or discrete claim-size model with closed-form moments.
class ClaimModel
{
  public:
    enum class Kind
    {
        exponential,
        pareto,
        discrete,
        degenerate
    };

    static ClaimModel exponential(double rate);
    //! Pareto type I: P{X > x} = (scale / x)^shape for x >= scale.
    static ClaimModel pareto(double shape, double scale);
    static ClaimModel discrete(DiscreteClaimLaw law);
    static ClaimModel degenerate(double value);

    Kind kind() const { return kind_; }
    double mean() const;
    //! E X^2; DomainError for Pareto with shape <= 2.
    double second_moment() const;
    //! P{X > x}.
    double tail(double x) const;
    //! Smallest x with P{X <= x} >= q (q in (0,1)).
    double quantile(double q) const;
    double sample(Rng& rng) const;
    bool is_subexponential() const { return kind_ == Kind::pareto; }

    double rate() const { return a_; }
    double shape() const { return a_; }
    double scale() const { return b_; }
    //! Set for discrete models only.
    std::optional<DiscreteClaimLaw> const& law() const { return law_; }

  private:
    ClaimModel(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
    std::optional<DiscreteClaimLaw> law_;
};

enum class SurplusVariant
{
    mfrp,          //!< u + mu (1+rho) lambda Y(t) - S(t)
    mfrp_variant,  //!< u + mu (1+rho) lambda U(t) - S(t)
    mfrp2          //!< u + c t - S(t)
};

//! Initial capital, loading, claim mean and premium rate.
struct RiskConfig
{
    double u;
    double rho;
    double mu;  //!< claim mean E X_1
    double c;   //!< premium rate (MFRP-II only)
    SurplusVariant variant;

    //! Throws DomainError on invalid fields. Logs a warning for rho < 0
    //! (once per distinct value).
    void validate() const;
};

//! Surplus on a grid with the index of its first negative value, if any.
struct SurplusPath
{
    Grid grid;
    std::vector<double> values;
    std::optional<std::size_t> ruin_index;
};

/*!
 * Surplus process driven by the inverse path y. Claim counts come from
 * simulate_mfpp on y; claims are drawn in arrival order. For the MFRP
 * variants the claim mean must equal cfg.mu (ConfigMismatch otherwise).
 */
SurplusPath simulate_surplus(MixedParams const& p, RiskConfig const& cfg,
                             ClaimModel const& claims, InversePath const& y,
                             Rng& rng);

//! As above with the claim counts n already drawn on the grid of y.
SurplusPath simulate_surplus(MixedParams const& p, RiskConfig const& cfg,
                             ClaimModel const& claims, InversePath const& y,
                             CountingPath const& n, Rng& rng);

//! E R(t): u + mu rho lambda U(t) for the MFRP variants, u + c t - E X lambda
//! U(t) for MFRP-II.
double surplus_mean(MixedParams const& p, RiskConfig const& cfg,
                    ClaimModel const& claims, double t);

//! Result of the constant/monotone mean check at one time.
struct MeanCheckRow
{
    double t;
    double mean_minus_u;
    double std_error;
};

struct MartingaleReport
{
    std::vector<MeanCheckRow> rows;
    bool monotone_increasing;
    bool monotone_decreasing;
    //! For rho = 0: every |mean - u| within 3 standard errors.
    bool zero_within_3se;
};

/*!
 * Empirical mean of the surplus at each time in t_list over n_paths MFRP
 * paths; checks the constant-mean (rho = 0) or monotone-mean consequence.
 */
MartingaleReport martingale_check(MixedParams const& p, RiskConfig const& cfg,
                                  ClaimModel const& claims,
                                  std::vector<double> const& t_list,
                                  std::size_t n_paths,
                                  std::uint64_t master_seed,
                                  unsigned workers = 1, double h_op = 1e-3);

//! mu^2 lambda^2 rho^2 cov_y + E X^2 * E N(s).
double mfrp_cov(MixedParams const& p, RiskConfig const& cfg,
                ClaimModel const& claims, double s, double t, double cov_y,
                double mean_n_s);

//! E X^2 * E N(s) + lambda^2 (E X)^2 cov_y.
double mfrp2_cov(MixedParams const& p, ClaimModel const& claims, double s,
                 double t, double cov_y, double mean_n_s);

//! Z(t_i) = R(t_i + delta) - R(t_i) wherever t_i + delta is on the grid.
SamplePath increments(SurplusPath const& path, double delta);

/*!
 * Negated least-squares slope of log(corr) against log(t). Throws FitError
 * for non-positive correlations, fewer than two points, or t spanning less
 * than two decades.
 */
double lrd_exponent(std::vector<std::pair<double, double>> const& corr_values);

//! Large-t leading term of Var Z_delta(t).
double increment_var_leading(MixedParams const& p, ClaimModel const& claims,
                             double t, double delta);

//! Corr(R(s), R(t)) for fixed s and large t from the asymptotic formulas.
double mfrp_corr_asymptotic(MixedParams const& p, RiskConfig const& cfg,
                            ClaimModel const& claims, double s, double t);

//! Corr(Z(s), Z(t)) for fixed s and large t from the asymptotic formulas.
double increment_corr_asymptotic(MixedParams const& p, RiskConfig const& cfg,
                                 ClaimModel const& claims, double s,
                                 double delta, double t);

struct DependenceExponents
{
    double lrd;
    double srd;
    std::vector<std::pair<double, double>> lrd_curve;
    std::vector<std::pair<double, double>> srd_curve;
};

//! Fit both exponents over n_points log-spaced t in [t_lo, t_hi].
DependenceExponents dependence_exponents(MixedParams const& p,
                                         RiskConfig const& cfg,
                                         ClaimModel const& claims, double s,
                                         double delta, double t_lo = 1e2,
                                         double t_hi = 1e4, int n_points = 41);

}  // namespace mfrisk
