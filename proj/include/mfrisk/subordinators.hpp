#pragma once

#include <vector>

#include "mfrisk/numerics.hpp"
#include "mfrisk/random.hpp"

namespace mfrisk
{
/*!
 * Parameters (alpha1, alpha2, C1, C2, lambda) of the mixed stable subordinator
 * and of the processes built on it.
 *
 * C1 + C2 = 1. With both weights positive, 0 < alpha2 < alpha1 < 1. A zero
 * weight switches every formula to the single-exponent form of the other
 * component.
 */
struct MixedParams
{
    double alpha1;
    double alpha2;
    double c1;
    double c2;
    double lambda;

    MixedParams(double alpha1, double alpha2, double c1, double c2,
                double lambda = 1.0);

    //! True when one weight is zero.
    bool degenerate() const { return c1 == 0.0 || c2 == 0.0; }
    //! Exponent of the surviving component when degenerate.
    double single_alpha() const { return c2 == 0.0 ? alpha1 : alpha2; }
};

//! D(s) on a uniform operational-time grid.
struct SubordinatorPath
{
    Grid grid;
    std::vector<double> values;
};

//! Y(t) on a uniform real-time grid.
struct InversePath
{
    Grid grid;
    std::vector<double> values;
};

/*!
 * One-sided alpha-stable variate with Laplace transform exp(-dt s^alpha)
 * (Kanter's representation).
 */
double sample_stable_increment(double alpha, double dt, Rng& rng);

//! Draws successive increments of D over a fixed operational step.
class SubordinatorStepper
{
  public:
    SubordinatorStepper(MixedParams const& p, double h_op);

    double next(Rng& rng);
    double step() const { return h_; }

  private:
    double h_;
    double a1_, a2_;
    double scale1_ = 0.0;  // C1^{1/a1} h^{1/a1}
    double scale2_ = 0.0;  // C2^{1/a2} h^{1/a2}
};

//! Exact draw of D(s) for a single operational time s.
double sample_subordinator_at(MixedParams const& p, double s, Rng& rng);

//! D on the given operational grid, built from independent increments.
SubordinatorPath sample_mixed_path(MixedParams const& p, Grid const& op_grid,
                                   Rng& rng);

/*!
 * First passage Y(t) = inf{s : D(s) > t} by a merged sweep. Within an
 * operational step the crossing point is linearly interpolated, which is
 * exact for piecewise linear D and off by at most one step otherwise.
 * Throws ExtendNeeded unless D ends above the last time point.
 */
InversePath inverse_path(SubordinatorPath const& d, Grid const& t_grid);

/*!
 * Same as inverse_path(sample_mixed_path(...)) with the operational grid
 * extended step by step until D passes the horizon; consumes the random
 * stream in the same order.
 */
InversePath sample_inverse_path(MixedParams const& p, Grid const& t_grid,
                                double h_op, Rng& rng);

//! U(t) = E Y(t).
double mean_inverse(MixedParams const& p, double t);

enum class Regime
{
    small,
    large
};

//! Power-law asymptote of U(t) for t -> 0 or t -> infinity.
double mean_inverse_asymptotic(MixedParams const& p, double t, Regime regime);

//! Large-t asymptote of Var Y(t).
double var_inverse_asymptotic(MixedParams const& p, double t);

//! Limit of Cov(Y(s), Y(t)) as t -> infinity at fixed s.
double cov_inverse_fixed_s(MixedParams const& p, double s);

//! Coefficient K(s) of the t^{alpha2 - 1} correction to the covariance.
double cov_inverse_K(MixedParams const& p, double s);

//! cov_inverse_fixed_s(s) - t^{alpha2-1} K(s).
double cov_inverse_corrected(MixedParams const& p, double s, double t);

}  // namespace mfrisk
