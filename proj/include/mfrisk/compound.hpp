#pragma once

#include <vector>

#include "mfrisk/mfpp.hpp"
#include "mfrisk/numerics.hpp"
#include "mfrisk/random.hpp"
#include "mfrisk/subordinators.hpp"

namespace mfrisk
{
//! Claim law on the positive integers: P{X = i} = prob(i), i = 1..imax.
class DiscreteClaimLaw
{
  public:
    //! probs[i-1] = P{X = i}. Throws DomainError unless non-negative and
    //! summing to 1 within 1e-12.
    explicit DiscreteClaimLaw(std::vector<double> probs);

    static DiscreteClaimLaw degenerate(int value);

    int max_value() const { return int(probs_.size()); }
    double prob(int i) const
    {
        return (i >= 1 && i <= max_value()) ? probs_[i - 1] : 0.0;
    }
    double mean() const;
    double second_moment() const;
    int sample(Rng& rng) const;

    /*!
     * r_n(k) = P{X_1 + ... + X_k = n} for 0 <= k, n <= n_max, indexed
     * [k][n], with r_0(0) = 1.
     */
    std::vector<std::vector<double>> convolution_table(int n_max) const;

  private:
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

//! Sampled path with real values on a grid.
struct SamplePath
{
    Grid grid;
    std::vector<double> values;
};

//! C(t_i) = X_1 + ... + X_{N(t_i)} with iid claims from law.
SamplePath simulate_compound(CountingPath const& n, DiscreteClaimLaw const& law,
                             Rng& rng);

/*!
 * P{C(t) = n} = sum_{k=1}^n r_n(k) p_k(t), and p_0(t) for n = 0.
 */
double compound_state_prob(MixedParams const& p, DiscreteClaimLaw const& law,
                           int n, double t,
                           PnMethod method = PnMethod::laplace);

//! q_0..q_n on a grid, using the convolution form of p_k.
std::vector<GridFunction> compound_state_prob_grid(MixedParams const& p,
                                                   DiscreteClaimLaw const& law,
                                                   int n, Grid const& grid);

/*!
 * C1 D^a1 q_n + C2 D^a2 q_n + lambda q_n - lambda sum_{i=1}^n r_i q_{n-i}
 * with the L1 Caputo scheme.
 */
GridFunction compound_fde_residual(MixedParams const& p,
                                   DiscreteClaimLaw const& law, int n,
                                   Grid const& grid);

//! Same residual from precomputed q_0..q_n.
GridFunction compound_fde_residual(MixedParams const& p,
                                   DiscreteClaimLaw const& law,
                                   std::vector<GridFunction> const& q);

double compound_mean(MixedParams const& p, DiscreteClaimLaw const& law,
                     double t);
double compound_var(MixedParams const& p, DiscreteClaimLaw const& law,
                    double t, double var_y);

//! Var C(t) - E C(t).
double compound_overdispersion(MixedParams const& p,
                               DiscreteClaimLaw const& law, double t,
                               double var_y);

//! C1 D^a1 p_n + C2 D^a2 p_n + lambda (p_n - p_{n-1}) from p_n and p_{n-1}.
GridFunction mfpp_fde_residual(MixedParams const& p, GridFunction const& pn,
                               GridFunction const* pn_minus_1);

}  // namespace mfrisk
