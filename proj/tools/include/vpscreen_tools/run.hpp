#pragma once
#include "vpscreen/assembly.hpp"
#include "vpscreen_tools/report.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vpscreen::tools {

enum class Mode { Table1, Table2, Potentials, Properties };

struct RunConfig {
  std::vector<int> z_list;
  nucleus::Shape shape{nucleus::Shape::Fermi};
  std::optional<double> rms_fm; // default: built-in radius for each Z
  Mode mode{Mode::Table2};
  Format format{Format::Table};
  assembly::Settings settings{};
  int threads{1};
  bool verbose{false};
};

//! Checks ranges; throws DomainError naming the offending field.
void validate(const RunConfig &c);

//! Nuclear model for one ion of the run.
nucleus::NuclearModel model_for(const RunConfig &c, int Z);

enum ExitCode { kSuccess = 0, kConvergenceFailure = 1, kConfigError = 2 };

//! Computes every ion and writes the report to out; diagnostics go to err.
int run(const RunConfig &c, std::ostream &out, std::ostream &err);

} // namespace vpscreen::tools
