#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mfrisk::app
{
struct CriterionResult
{
    int id = 0;
    std::string name;
    bool passed = false;
    //! Named measurements, e.g. the largest error or a test statistic.
    std::vector<std::pair<std::string, double>> measured;
    std::string tolerance;
    double runtime_s = 0.0;
    //! Error message when the criterion could not be evaluated.
    std::string error;
};

struct AcceptanceOptions
{
    unsigned workers = 1;
    std::uint64_t seed = 20240611;
    //! Directory for the reproducibility runs; a temporary one when empty.
    std::string scratch_dir;
};

std::vector<int> all_criteria();

//! Run one criterion (1..11). Exceptions become a failed result.
CriterionResult run_criterion(int id, AcceptanceOptions const& opt);

std::vector<CriterionResult> run_acceptance(std::vector<int> const& ids,
                                            AcceptanceOptions const& opt);

//! "[PASS] 3 inverse-subordinator mean: key=value ... (tol) 1.2s".
std::string format_line(CriterionResult const& r);

nlohmann::json to_json(std::vector<CriterionResult> const& results);

}  // namespace mfrisk::app
