#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace mfrisk
{
//! Monte Carlo point estimate with its standard error.
struct Estimate
{
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;

    double ci_low(double z = 1.96) const { return value - z * std_error; }
    double ci_high(double z = 1.96) const { return value + z * std_error; }
    //! |value - target| <= k * std_error.
    bool within(double target, double k = 3.0) const;
};

//! Pairwise (cascade) summation.
double pairwise_sum(std::vector<double> const& x);
double sample_mean(std::vector<double> const& x);

//! Mean with standard error sd / sqrt(n).
Estimate estimate_mean(std::vector<double> const& x);

/*!
 * Estimate from a value and its per-path influence terms psi_i (zero mean
 * by construction); the standard error is sd(psi) / sqrt(n).
 */
Estimate estimate_from_influence(double value, std::vector<double> const& psi);

//! Sample variance (1/n) and its influence terms.
struct Moment2
{
    double value;
    std::vector<double> psi;
};
Moment2 variance_influence(std::vector<double> const& x);
Moment2 covariance_influence(std::vector<double> const& x,
                             std::vector<double> const& y);

Estimate estimate_variance(std::vector<double> const& x);
Estimate estimate_covariance(std::vector<double> const& x,
                             std::vector<double> const& y);

//! Binomial proportion with SE sqrt(p(1-p)/n).
Estimate estimate_proportion(std::size_t hits, std::size_t n);

//! sup |F1 - F2| for two samples (copies are sorted).
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

//! sup |F_n - F| for a sample against a continuous CDF.
double ks_statistic(std::vector<double> sample,
                    std::function<double(double)> const& cdf);

//! Asymptotic Kolmogorov p-value for statistic d with effective size n_eff.
double ks_pvalue(double d, double n_eff);

}  // namespace mfrisk
