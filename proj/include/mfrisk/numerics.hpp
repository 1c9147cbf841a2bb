#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace mfrisk
{
//! Uniform grid starting at zero.
class Grid
{
  public:
    Grid() = default;

    //! n_steps + 1 points 0, h, ..., n_steps*h.
    Grid(double h, std::size_t n_steps);

    //! Smallest grid with step h whose last point is >= t_end (up to 1e-9 h).
    static Grid to(double t_end, double h);

    //! Validate an arbitrary point list; throws GridError if it is not a
    //! uniform grid starting at zero.
    static Grid from_points(std::vector<double> const& pts);

    double step() const { return h_; }
    std::size_t size() const { return n_ + 1; }
    double operator[](std::size_t i) const { return double(i) * h_; }
    double back() const { return double(n_) * h_; }

    //! Index of the point equal to t (within 1e-9 h); GridError otherwise.
    std::size_t index_of(double t) const;

    bool same_as(Grid const& other) const;

  private:
    double h_ = 1.0;
    std::size_t n_ = 0;
};

//! Values sampled on a grid.
struct GridFunction
{
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> v);
    //! Sample f at every grid point.
    static GridFunction sample(Grid const& g,
                               std::function<double(double)> const& f);
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/*!
 * L1 discretisation of the Caputo derivative of order alpha in (0,1].
 * Value at the first grid point is zero; for alpha = 1 this is the backward
 * difference (forward difference at the first point).
 */
GridFunction caputo_l1(GridFunction const& f, double alpha);

//! Gaver-Stehfest weights V_1..V_order.
std::vector<double> stehfest_weights(int order);

//! Gaver-Stehfest inversion of a real transform at t > 0.
double laplace_invert(std::function<double(double)> const& F, double t,
                      int order = 14);

/*!
 * As laplace_invert, but also evaluates order-2 and throws
 * NumericalInstability when the two disagree by more than tol.
 */
double laplace_invert_checked(std::function<double(double)> const& F,
                              double t, int order, double tol);

/*!
 * Laplace convolution on a uniform grid. The first and last panels use a
 * power-law fit a s^p from the samples at h and 2h, so functions that are
 * integrable but unbounded at zero are handled. Values at index 0 are not
 * used when the fit succeeds; the result at t = 0 is zero.
 */
GridFunction convolve(GridFunction const& f, GridFunction const& g);

//! n-fold self-convolution f * f * ... * f (n >= 1; n = 1 returns f).
GridFunction convolve_power(GridFunction const& f, int n);

/*!
 * Integral of f over [0, t_i] at each grid point, with the power-law first
 * panel used by convolve.
 */
GridFunction cumulative_integral(GridFunction const& f);

//! Damped iteration y <- (1-d) y + d map(y) until |y - map(y)| <= tol.
double fixed_point(std::function<double(double)> const& map, double init,
                   double tol = 1e-13, double damping = 0.5);

//! Sign-change brackets of y - map(y) on a uniform scan of (lo, hi).
std::vector<std::pair<double, double>> root_brackets(
    std::function<double(double)> const& map, double lo, double hi,
    int n_scan = 200);

//! Bisection for a root of f in [lo, hi] (f(lo), f(hi) of opposite sign).
double bisect(std::function<double(double)> const& f, double lo, double hi,
              double tol = 1e-15);

}  // namespace mfrisk
