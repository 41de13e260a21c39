#ifndef FSILAB_CONFIG_HPP
#define FSILAB_CONFIG_HPP

#include "fsilab/fixed_point.hpp"
#include "fsilab/geometry.hpp"

#include <cstdint>
#include <string>

namespace fsilab {

enum class RunMode { Lambda, Pi, Lemmas, Compat, Contraction, Mms };

const char* run_mode_name(RunMode m);

// Parsed, validated run configuration.  Plain-text `key = value` sections;
// unknown keys are rejected with line diagnostics; the pressure law is
// pinned to the identity.
struct RunConfig {
    // [geometry]
    double L1 = 1.0, L2 = 2.0, L3 = 3.0;
    int N1 = 8, N2 = 8, M_lo = 8, M_up = 8, M_el = 8;
    // [physics]
    double lambda = 1.0, mu = 1.0;
    std::string pressure_law = "identity";
    // [iteration]
    IterationConfig iter;
    // [run]
    RunMode mode = RunMode::Pi;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    double strength = 0.05;        // compatible-data amplitude
    double contraction_T = 0.08;   // largest window of the T sweep
    bool allow_incompatible = false;

    ChannelGeometry geometry() const;
    Viscosities viscosities() const { return {lambda, mu}; }
    void validate() const;
    std::string echo() const; // canonical text form written into summaries
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

std::string default_config_text();

} // namespace fsilab

#endif
