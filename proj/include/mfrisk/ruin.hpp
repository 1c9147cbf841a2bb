#pragma once

#include <cstdint>
#include <string>

#include "mfrisk/numerics.hpp"
#include "mfrisk/risk.hpp"
#include "mfrisk/subordinators.hpp"

namespace mfrisk
{
enum class RuinMethod
{
    monte_carlo,
    laplace_inversion,
    density_integral,
    asymptotic
};

std::string to_string(RuinMethod m);

/*!
 * Ruin probability psi_u(t). For Monte Carlo std_error is the binomial
 * standard error; for the deterministic methods it is a numerical error
 * estimate (order difference or grid halving), zero when not available.
 */
struct RuinEstimate
{
    double probability;
    double std_error;
    std::size_t n_paths;
    double horizon;
    RuinMethod method;
};

//! Monte Carlo ruin together with the two bounding claim-sum events.
struct RuinSandwich
{
    RuinEstimate ruin;
    double p_claims_exceed_u_plus_ct;  //!< P{S(t) > u + c t}
    double p_claims_exceed_u;          //!< P{S(t) > u}
    double se_lower;
    double se_upper;
};

/*!
 * Finite-horizon ruin of u + c t - S(t). Claim instants are sampled exactly
 * as partial sums of interarrival draws D(E / lambda), and ruin is checked
 * at each claim instant, so there is no time-discretisation bias.
 */
RuinEstimate ruin_prob_mc(MixedParams const& p, RiskConfig const& cfg,
                          ClaimModel const& claims, double horizon,
                          std::size_t n_paths, std::uint64_t master_seed,
                          unsigned workers = 1);

//! As ruin_prob_mc, also returning the claim-sum bounds at the horizon.
RuinSandwich ruin_sandwich_mc(MixedParams const& p, RiskConfig const& cfg,
                              ClaimModel const& claims, double horizon,
                              std::size_t n_paths, std::uint64_t master_seed,
                              unsigned workers = 1);

/*!
 * Ruin-time density on a grid for exponential claims of rate mu_rate:
 * exp(-mu (u + c t)) sum_n mu^n (u+ct)^{n-1}/n! (u + ct/(n+1)) f_W^{*(n+1)}(t).
 * Terms are added until they fall below 1e-14 of the running sum on the
 * whole grid; NonConvergence after n_terms terms.
 */
GridFunction ruin_density_exp_grid(MixedParams const& p, double u, double c,
                                   double mu_rate, Grid const& grid,
                                   int n_terms = 200);

//! f_T(t) with t a point of grid.
double ruin_density_exp(MixedParams const& p, double u, double c,
                        double mu_rate, double t, int n_terms,
                        Grid const& grid);

/*!
 * Integral of the ruin-time density over [0, t] on a grid of step close to
 * h. std_error holds the change against a grid of twice the step.
 */
RuinEstimate ruin_prob_density_integral(MixedParams const& p, double u,
                                        double c, double mu_rate, double t,
                                        double h = 2e-3);

//! Root y(s) in (0,1) of y = lambda / (C1 w^a1 + C2 w^a2 + lambda),
//! w = s + c mu (1 - y).
double ruin_lt_root(MixedParams const& p, double c, double mu_rate, double s);

//! Laplace transform in t of psi_u(t): y(s) exp(-u mu (1 - y(s))) / s.
double ruin_lt(MixedParams const& p, double u, double c, double mu_rate,
               double s);

//! Gaver-Stehfest inversion of ruin_lt; std_error = |order - (order-2)|.
RuinEstimate ruin_prob_lt(MixedParams const& p, double u, double c,
                          double mu_rate, double t, int order = 14);

//! lambda U(t) P{X > u} for subexponential (Pareto) claims.
double ruin_asymptotic_subexp(MixedParams const& p, ClaimModel const& claims,
                              double u, double t);

}  // namespace mfrisk
