#ifndef FSILAB_RUNNER_HPP
#define FSILAB_RUNNER_HPP

#include "fsilab/config.hpp"
#include "fsilab/fixed_point.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fsilab {

// Exit codes of the harness: 0 ok, 2 config error, 3 non-convergence (or a
// failed check suite), 4 floor breach, 5 inner divergence.
enum ExitCode : int {
    ExitOk = 0,
    ExitConfigError = 2,
    ExitNonConvergence = 3,
    ExitFloorBreach = 4,
    ExitInnerDivergence = 5
};

struct RunSummary {
    int exit_code = ExitOk;
    std::string status;
    std::vector<std::string> warnings;
    std::vector<std::string> artifacts; // files written, relative to output_dir
};

// Dispatches one mode, writes CSV/JSON artifacts under cfg.output_dir, and
// returns the summary.  Numeric outputs are deterministic given the
// (config, seed) pair.
RunSummary run(const RunConfig& cfg);

// FNV-1a content digest used to tie artifacts to their inputs.
std::uint64_t input_digest(const std::string& text, std::uint64_t seed);

void save_checkpoint(const std::string& path, const ChannelGeometry& g,
                     const RunConfig& cfg, const FsiState& state);
FsiState load_checkpoint(const std::string& path, const ChannelGeometry& expected);

// Loads a checkpoint and re-emits norms.csv from the stored state; norms
// recompute identically to the producing run.
RunSummary recompute_norms(const RunConfig& cfg, const std::string& checkpoint_path);

} // namespace fsilab

#endif
