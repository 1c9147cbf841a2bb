#pragma once

namespace mfrisk
{
//! Parameters of the three-parameter Mittag-Leffler function.
struct MLParams
{
    double alpha;
    double beta;
    double gamma;

    //! Throws DomainError unless all three are positive and finite.
    MLParams(double alpha, double beta, double gamma = 1.0);
};

/*!
 * Three-parameter Mittag-Leffler function
 * \f$ E^\gamma_{\alpha,\beta}(z) = \sum_k (\gamma)_k z^k / (k!\,\Gamma(k\alpha+\beta)) \f$.
 *
 * The power series is summed in log space with sign tracking. For negative
 * arguments the alternating series cancels badly; when \f$ \alpha \le 1 \f$
 * those arguments go through a Talbot contour integral of the Laplace
 * transform \f$ s^{\alpha\gamma-\beta}/(s^\alpha - z)^\gamma \f$ instead.
 * Absolute accuracy is about 1e-13 on \f$ z \in [-20, 0] \f$.
 */
double ml3(MLParams const& p, double z);

//! Two-parameter function, ml3 with gamma = 1.
double ml2(double alpha, double beta, double z);

//! Power series only. Throws NonConvergence on loss of significance.
double ml3_series(MLParams const& p, double z);

//! Talbot contour evaluation, valid for alpha <= 1 and z < 0.
double ml3_contour(MLParams const& p, double z, int nodes = 32);

/*!
 * Leading large-t term of \f$ E^\gamma_{\alpha,\beta}(-\lambda t^\alpha) \f$:
 * \f$ \lambda^{-\gamma} t^{-\alpha\gamma} / \Gamma(\beta - \alpha\gamma) \f$.
 */
double ml3_asymptotic(MLParams const& p, double lambda, double t);

//! 1/Gamma(x), zero at the poles.
double rgamma(double x);

}  // namespace mfrisk
