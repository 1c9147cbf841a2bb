#pragma once

#include <string>
#include <vector>

#include "mfrisk/app/config.hpp"

namespace mfrisk::app
{
//! One artifact produced by a command, held in memory until written.
struct OutputFile
{
    std::string name;
    std::string contents;
};

using Outputs = std::vector<OutputFile>;

//! CSV text with a metadata comment line and a header row.
class CsvWriter
{
  public:
    CsvWriter(ExperimentConfig const& cfg, std::vector<std::string> columns);
    //! Append one row; numbers use the shortest round-trip representation.
    void row(std::vector<std::string> const& cells);
    std::string const& str() const { return text_; }

  private:
    std::size_t n_cols_;
    std::string text_;
};

std::string format_number(double x);

//! paths.csv and summary.json.
Outputs cmd_simulate(ExperimentConfig const& cfg);
//! moments.csv.
Outputs cmd_moments(ExperimentConfig const& cfg);
//! state_probs.csv, interarrival.csv and pgf.csv.
Outputs cmd_distribution(ExperimentConfig const& cfg);
//! ruin.csv.
Outputs cmd_ruin(ExperimentConfig const& cfg);
//! dependence.csv and dependence.json.
Outputs cmd_dependence(ExperimentConfig const& cfg);
//! acceptance.json; one line per criterion goes to `lines`.
Outputs cmd_acceptance(ExperimentConfig const& cfg,
                       std::vector<std::string>* lines = nullptr);

/*!
 * Write every file into out_dir. Files are first written under temporary
 * names and renamed only after all of them succeeded, so a failure leaves
 * no partial output.
 */
void write_outputs(Outputs const& files, std::string const& out_dir);

}  // namespace mfrisk::app
