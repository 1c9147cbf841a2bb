#include "mfrisk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "mfrisk/errors.hpp"

namespace mfrisk
{
//---------------------------------------------------------------------------//
// Grid
//---------------------------------------------------------------------------//
Grid::Grid(double h, std::size_t n_steps) : h_(h), n_(n_steps)
{
    if (!(h > 0) || !std::isfinite(h))
        throw GridError("grid step must be positive and finite");
}

Grid Grid::to(double t_end, double h)
{
    if (!(t_end >= 0))
        throw GridError("grid end must be non-negative");
    if (!(h > 0))
        throw GridError("grid step must be positive");
    double const r = t_end / h;
    auto n = static_cast<std::size_t>(std::llround(r));
    if (double(n) * h < t_end - 1e-9 * h)
        n = static_cast<std::size_t>(std::ceil(r));
    return Grid(h, n);
}

Grid Grid::from_points(std::vector<double> const& pts)
{
    if (pts.size() < 2)
        throw GridError("a grid needs at least two points");
    if (pts[0] != 0.0)
        throw GridError("grid must start at 0");
    double const h = pts[1] - pts[0];
    if (!(h > 0))
        throw GridError("grid points must be strictly increasing");
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        double const d = pts[i] - pts[i - 1];
        if (!(d > 0))
            throw GridError("grid points must be strictly increasing");
        if (std::abs(d - h) > 1e-12 * std::max(h, pts[i]))
            throw GridError("grid spacing is not uniform");
    }
    return Grid(h, pts.size() - 1);
}

std::size_t Grid::index_of(double t) const
{
    double const r = t / h_;
    auto const i = static_cast<long long>(std::llround(r));
    if (i < 0 || std::size_t(i) > n_ || std::abs(r - double(i)) > 1e-9)
        throw GridError("time " + std::to_string(t) + " is not a grid point");
    return std::size_t(i);
}

bool Grid::same_as(Grid const& other) const
{
    return n_ == other.n_ && std::abs(h_ - other.h_) <= 1e-12 * h_;
}

GridFunction::GridFunction(Grid g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v))
{
    if (values.size() != grid.size())
        throw GridError("grid function length does not match its grid");
}

GridFunction GridFunction::sample(Grid const& g,
                                  std::function<double(double)> const& f)
{
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = f(g[i]);
    return GridFunction(g, std::move(v));
}

//---------------------------------------------------------------------------//
// Caputo L1
//---------------------------------------------------------------------------//
GridFunction caputo_l1(GridFunction const& f, double alpha)
{
    if (!(alpha > 0 && alpha <= 1))
        throw DomainError("caputo_l1 requires alpha in (0,1]");
    std::size_t const m = f.size();
    double const h = f.grid.step();
    std::vector<double> out(m, 0.0);
    if (m < 2)
        return GridFunction(f.grid, out);

    if (alpha == 1.0)
    {
        out[0] = (f[1] - f[0]) / h;
        for (std::size_t n = 1; n < m; ++n)
            out[n] = (f[n] - f[n - 1]) / h;
        return GridFunction(f.grid, out);
    }

    std::vector<double> b(m);
    for (std::size_t j = 0; j < m; ++j)
        b[j] = std::pow(double(j + 1), 1 - alpha) - std::pow(double(j), 1 - alpha);
    std::vector<double> df(m, 0.0);
    for (std::size_t k = 1; k < m; ++k)
        df[k] = f[k] - f[k - 1];

    double const scale = std::pow(h, -alpha) / std::tgamma(2 - alpha);
    for (std::size_t n = 1; n < m; ++n)
    {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            acc += b[j] * df[n - j];
        out[n] = scale * acc;
    }
    return GridFunction(f.grid, out);
}

//---------------------------------------------------------------------------//
// Gaver-Stehfest
//---------------------------------------------------------------------------//
std::vector<double> stehfest_weights(int order)
{
    if (order < 2 || order > 20 || order % 2 != 0)
        throw DomainError("Stehfest order must be even and in [2, 20]");
    int const half = order / 2;
    auto fact = [](int n) {
        long double r = 1;
        for (int i = 2; i <= n; ++i)
            r *= i;
        return r;
    };
    std::vector<double> w(order + 1, 0.0);
    for (int k = 1; k <= order; ++k)
    {
        long double s = 0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j)
        {
            s += std::pow((long double)j, half) * fact(2 * j)
                 / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j)
                    * fact(2 * j - k));
        }
        w[k] = double(((k + half) % 2 == 0 ? 1 : -1) * s);
    }
    return w;
}

double laplace_invert(std::function<double(double)> const& F, double t,
                      int order)
{
    if (!(t > 0))
        throw DomainError("laplace_invert requires t > 0");
    auto const w = stehfest_weights(order);
    double const a = std::numbers::ln2 / t;
    double acc = 0.0;
    for (int k = 1; k <= order; ++k)
        acc += w[k] * F(k * a);
    return a * acc;
}

double laplace_invert_checked(std::function<double(double)> const& F,
                              double t, int order, double tol)
{
    double const v = laplace_invert(F, t, order);
    double const v2 = laplace_invert(F, t, order - 2);
    if (!(std::abs(v - v2) <= tol))
    {
        throw NumericalInstability(
            "Gaver-Stehfest orders " + std::to_string(order) + " and "
            + std::to_string(order - 2) + " disagree by "
            + std::to_string(std::abs(v - v2)) + " at t=" + std::to_string(t));
    }
    return v;
}

//---------------------------------------------------------------------------//
// Convolution
//---------------------------------------------------------------------------//
namespace
{
// a s^p through (h, f1) and (2h, f2); a h^p = f1 is kept as f1 so that
// steep fits do not meet 0 * inf
struct PowerFit
{
    double f1;
    double p;
};

std::optional<PowerFit> power_fit(double f1, double f2)
{
    if (!(f1 != 0 && f2 != 0) || !std::isfinite(f1) || !std::isfinite(f2)
        || (f1 > 0) != (f2 > 0))
        return std::nullopt;
    double const p = std::log(f2 / f1) / std::numbers::ln2;
    if (p <= -1)
        throw NumericalInstability("power-law fit exponent " + std::to_string(p)
                                   + " is not integrable at 0");
    return PowerFit{f1, p};
}

void require_finite_origin(double v)
{
    if (!std::isfinite(v))
        throw NumericalInstability(
            "value at t=0 is not finite and no power-law fit is available");
}

}  // namespace

GridFunction convolve(GridFunction const& f, GridFunction const& g)
{
    if (!f.grid.same_as(g.grid))
        throw GridError("convolve: grids differ");
    std::size_t const m = f.size();
    double const h = f.grid.step();
    std::vector<double> out(m, 0.0);
    if (m < 2)
        return GridFunction(f.grid, out);

    std::optional<PowerFit> ff, fg;
    if (m >= 3)
    {
        ff = power_fit(f[1], f[2]);
        fg = power_fit(g[1], g[2]);
    }

    // i = 1: a single panel, both ends possibly singular
    if (ff && fg)
    {
        out[1] = ff->f1 * fg->f1 * h * std::beta(ff->p + 1, fg->p + 1);
    }
    else if (ff)
    {
        require_finite_origin(g[0]);
        out[1] = ff->f1 * h * (g[1] / (ff->p + 1) + (g[0] - g[1]) / (ff->p + 2));
    }
    else if (fg)
    {
        require_finite_origin(f[0]);
        out[1] = fg->f1 * h * (f[1] / (fg->p + 1) + (f[0] - f[1]) / (fg->p + 2));
    }
    else
    {
        require_finite_origin(f[0]);
        require_finite_origin(g[0]);
        out[1] = 0.5 * h * (f[0] * g[1] + f[1] * g[0]);
    }

    double cf1 = 0, cf2 = 0, cg1 = 0, cg2 = 0;
    if (ff)
    {
        double const hp = ff->f1 * h;
        cf1 = hp / (ff->p + 1);
        cf2 = hp / (ff->p + 2);
    }
    else
    {
        require_finite_origin(f[0]);
    }
    if (fg)
    {
        double const hq = fg->f1 * h;
        cg1 = hq / (fg->p + 1);
        cg2 = hq / (fg->p + 2);
    }
    else
    {
        require_finite_origin(g[0]);
    }

    for (std::size_t i = 2; i < m; ++i)
    {
        // [0, h]: f near its origin, g linear between g_i and g_{i-1}
        double first = ff ? cf1 * g[i] + cf2 * (g[i - 1] - g[i])
                          : 0.5 * h * (f[0] * g[i] + f[1] * g[i - 1]);
        // [t_i - h, t_i]: g near its origin
        double last = fg ? cg1 * f[i] + cg2 * (f[i - 1] - f[i])
                         : 0.5 * h * (f[i] * g[0] + f[i - 1] * g[1]);
        double mid = 0.0;
        if (i > 2)
        {
            mid = 0.5 * (f[1] * g[i - 1] + f[i - 1] * g[1]);
            for (std::size_t j = 2; j + 1 < i; ++j)
                mid += f[j] * g[i - j];
            mid *= h;
        }
        out[i] = first + mid + last;
    }
    return GridFunction(f.grid, out);
}

GridFunction convolve_power(GridFunction const& f, int n)
{
    if (n < 1)
        throw DomainError("convolve_power requires n >= 1");
    GridFunction acc = f;
    for (int k = 1; k < n; ++k)
        acc = convolve(acc, f);
    return acc;
}

GridFunction cumulative_integral(GridFunction const& f)
{
    std::size_t const m = f.size();
    double const h = f.grid.step();
    std::vector<double> out(m, 0.0);
    if (m < 2)
        return GridFunction(f.grid, out);
    std::optional<PowerFit> fit;
    if (m >= 3)
        fit = power_fit(f[1], f[2]);
    if (fit)
    {
        out[1] = fit->f1 * h / (fit->p + 1);
    }
    else
    {
        require_finite_origin(f[0]);
        out[1] = 0.5 * h * (f[0] + f[1]);
    }
    for (std::size_t i = 2; i < m; ++i)
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return GridFunction(f.grid, out);
}

//---------------------------------------------------------------------------//
// Fixed point
//---------------------------------------------------------------------------//
double fixed_point(std::function<double(double)> const& map, double init,
                   double tol, double damping)
{
    if (!(damping > 0 && damping <= 1))
        throw DomainError("fixed_point damping must be in (0,1]");
    if (!(init > 0 && init < 1))
        throw DomainError("fixed_point init must be in (0,1)");
    double y = init;
    for (int it = 0; it < 100000; ++it)
    {
        double const my = map(y);
        if (!std::isfinite(my))
            throw NonConvergence("fixed_point: map returned a non-finite value");
        if (std::abs(y - my) <= tol)
            return y;
        y = (1 - damping) * y + damping * my;
        if (y < 0 || y > 1 + 1e-9)
            throw RangeError("fixed_point: iterate " + std::to_string(y)
                             + " left [0, 1]");
    }
    throw NonConvergence("fixed_point: no convergence in 100000 iterations");
}

std::vector<std::pair<double, double>> root_brackets(
    std::function<double(double)> const& map, double lo, double hi, int n_scan)
{
    std::vector<std::pair<double, double>> out;
    double const dx = (hi - lo) / n_scan;
    double xp = lo + 0.5 * dx;
    double gp = xp - map(xp);
    for (int i = 1; i < n_scan; ++i)
    {
        double const x = lo + (i + 0.5) * dx;
        double const gx = x - map(x);
        if ((gp < 0) != (gx < 0) || gx == 0)
            out.emplace_back(xp, x);
        xp = x;
        gp = gx;
    }
    return out;
}

double bisect(std::function<double(double)> const& f, double lo, double hi,
              double tol)
{
    double flo = f(lo);
    double const fhi = f(hi);
    if ((flo < 0) == (fhi < 0))
        throw DomainError("bisect: interval does not bracket a root");
    for (int it = 0; it < 400 && hi - lo > tol; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        double const fm = f(mid);
        if ((fm < 0) == (flo < 0))
        {
            lo = mid;
            flo = fm;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace mfrisk
