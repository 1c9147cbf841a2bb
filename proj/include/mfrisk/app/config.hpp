#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfrisk/compound.hpp"
#include "mfrisk/risk.hpp"
#include "mfrisk/subordinators.hpp"

namespace mfrisk::app
{
struct SimSettings
{
    std::size_t n_paths = 1000;
    double grid_step = 0.1;         //!< real-time output grid h
    double operational_step = 1e-3; //!< h_op for the subordinator
    double horizon = 5.0;
    std::uint64_t master_seed = 1;
    unsigned workers = 1;
};

struct DistributionSettings
{
    double t = 1.0;
    int n_max = 20;
    std::vector<double> interarrival_times{0.1, 0.5, 1, 2, 5, 10};
    std::vector<double> pgf_z{0, 0.25, 0.5, 0.75, 1};
};

struct RuinSettings
{
    std::vector<double> u_list;  //!< defaults to {risk.u}
    double horizon = 5.0;
};

struct DependenceSettings
{
    double s = 1.0;
    double delta = 1.0;
    double t_lo = 1e2;
    double t_hi = 1e4;
    int n_points = 41;
};

struct AcceptanceSettings
{
    std::vector<int> criteria;  //!< empty means all
    std::string scratch_dir;    //!< for the reproducibility criterion
};

//! Experiment description read from JSON; see configs/ for examples.
struct ExperimentConfig
{
    MixedParams params{0.9, 0.5, 0.5, 0.5, 1.0};
    std::optional<RiskConfig> risk;
    std::optional<ClaimModel> claims;
    SimSettings sim;
    std::vector<double> moment_times{0.5, 1, 2, 5};
    DistributionSettings distribution;
    RuinSettings ruin;
    DependenceSettings dependence;
    AcceptanceSettings acceptance;

    //! The JSON it was built from, after overrides; hashed into CSV headers.
    nlohmann::json source;

    //! Throws ConfigError on missing or invalid fields.
    static ExperimentConfig from_json(nlohmann::json const& j);
    static ExperimentConfig from_file(std::string const& path);
    //! Built-in parameters used by the acceptance suite.
    static ExperimentConfig reference();

    //! Claim model, defaulting to unit claims.
    ClaimModel claim_model() const;
    //! Checks the invariants on sim settings; ConfigError otherwise.
    void validate() const;
};

//! FNV-1a of the compact JSON dump without sim.workers, as 16 hex digits.
std::string config_hash(nlohmann::json const& j);

std::string const& library_version();

}  // namespace mfrisk::app
