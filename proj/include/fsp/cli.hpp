#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fsp/metrics.hpp"
#include "fsp/sim.hpp"
#include "fsp/verify.hpp"

// Command-line front end. run() is the whole program minus main(), so tests
// drive the binary in-process; every file the commands emit goes through the
// writers below, which keep the output byte-stable.

namespace fsp::cli {

/// Execute one command line (argv[0] is the program name). Returns the
/// process exit code: 0 success, 1 failed verification checks, 2 invalid
/// configuration or data.
int run(int argc, const char* const* argv);

/// Convenience overload: arguments without the program name.
int run(const std::vector<std::string>& args);

void write_population_csv(const std::string& path,
                          const std::vector<SweepRecord>& records);
void write_sample_csv(const std::string& path,
                      const std::vector<SweepRecord>& records);
void write_thresholds_csv(
    const std::string& path,
    const std::vector<std::pair<ModelSet, ThresholdResult<double>>>& rows);
void write_verify_csv(const std::string& path,
                      const std::vector<TheoremReport>& reports,
                      const std::string& crossover_detail);

}  // namespace fsp::cli
