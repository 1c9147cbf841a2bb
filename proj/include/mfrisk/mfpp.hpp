#pragma once

#include <cstdint>
#include <vector>

#include "mfrisk/numerics.hpp"
#include "mfrisk/random.hpp"
#include "mfrisk/subordinators.hpp"

namespace mfrisk
{
//! Counting process N(t_i) on a real-time grid.
struct CountingPath
{
    Grid grid;
    std::vector<std::int64_t> counts;
};

//! Default truncation for the Mittag-Leffler k-series.
inline constexpr int kDefaultKmax = 200;

/*!
 * Sum over k of (-x)^{k+shift} E^{k+1}_{alpha1, beta0 + d (k+shift)}(-y)
 * with x = C2 t^d / C1, y = scale * lambda t^alpha1 / C1, d = alpha1 - alpha2.
 * Degenerate parameters use the single exponent with C1 = 1 and x = 0.
 *
 * Stops once three consecutive terms fall below 1e-16 of the partial sum.
 * Throws NonConvergence if that does not happen within kmax terms or if the
 * terms cancel by more than six orders of magnitude.
 */
double mixed_ml_series(MixedParams const& p, double t, double beta0,
                       int shift, double y_scale = 1.0,
                       int kmax = kDefaultKmax);

//! N(Y(t_i)) with a rate-lambda Poisson process run in operational time.
CountingPath simulate_mfpp(MixedParams const& p, InversePath const& y,
                           Rng& rng);

//! Laplace transform of the interarrival time.
double interarrival_lt(MixedParams const& p, double s);

//! Interarrival density from its Mittag-Leffler series.
double interarrival_density(MixedParams const& p, double t,
                            int kmax = kDefaultKmax);

//! Interarrival CDF by Gaver-Stehfest inversion of lt(s)/s.
double interarrival_cdf_lt(MixedParams const& p, double t, int order = 14);

//! Exact interarrival draw W = D(E / lambda), E unit exponential.
double sample_interarrival(MixedParams const& p, Rng& rng);

//! P{N(t) = 0} from its Mittag-Leffler series.
double state_prob_p0(MixedParams const& p, double t, int kmax = kDefaultKmax);

//! Laplace transform of p_n.
double state_prob_lt(MixedParams const& p, int n, double s);

enum class PnMethod
{
    convolution,
    laplace
};

/*!
 * p_n on a grid by the convolution representation: f and g are k-series of
 * Mittag-Leffler values and p_n = lambda^n / C1^{n+1} (C1 f^{*(n+1)} +
 * C2 g^{*(n+1)}).
 */
GridFunction state_prob_pn_grid(MixedParams const& p, int n, Grid const& grid,
                                int kmax = kDefaultKmax);

//! The two factors f and g of the convolution representation for p_n.
GridFunction state_prob_pn_factor_f(MixedParams const& p, int n,
                                    Grid const& grid, int kmax = kDefaultKmax);
GridFunction state_prob_pn_factor_g(MixedParams const& p, int n,
                                    Grid const& grid, int kmax = kDefaultKmax);

/*!
 * p_n(t). The laplace method inverts state_prob_lt with Gaver-Stehfest; the
 * convolution method runs state_prob_pn_grid on a grid of step close to
 * grid_step ending at t.
 */
double state_prob_pn(MixedParams const& p, int n, double t,
                     PnMethod method = PnMethod::laplace,
                     double grid_step = 1e-3);

//! Both methods; CrossCheckFailure if they differ by more than tol.
double state_prob_pn_checked(MixedParams const& p, int n, double t,
                             double tol = 5e-3);

//! E z^{N(t)} for z in [0, 1].
double pgf(MixedParams const& p, double z, double t, int kmax = kDefaultKmax);

//! lambda U(t).
double mfpp_mean(MixedParams const& p, double t);
//! lambda U(t) + lambda^2 var_y.
double mfpp_var(MixedParams const& p, double t, double var_y);
//! lambda U(s) + lambda^2 cov_y for s <= t.
double mfpp_cov(MixedParams const& p, double s, double t, double cov_y);

}  // namespace mfrisk
