#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavesync/cohesion.hpp"
#include "wavesync/synth.hpp"
#include "wavesync/timeseries.hpp"

namespace wavesync {

enum class Command { transform, coherence, phase, rho, cohesion, synth };

std::string command_name(Command c);
Command command_from_name(const std::string& s);

// Everything a run needs; the sidecar echoes it so any output can be
// reproduced bit-exactly (thread count deliberately excluded).
struct RunConfig {
    Command command = Command::transform;

    std::string input;                 // series CSV (all commands but synth)
    std::vector<std::string> columns;  // selected series; empty = all
    std::string weights;               // weight CSV (cohesion fixed/tv)
    std::string scheme = "equal";      // equal | fixed:<timestamp> | tv
    Preprocess preprocess = Preprocess::none;

    double omega0 = 6.0;
    double envelope_var = 0.5;
    double s0 = 0.0;                   // 0 = default 2*dt
    double dj = 1.0 / 12.0;
    double smooth_time = 1.0;
    double smooth_scale = 0.6;

    std::size_t mc_draws = 0;          // 0 = no Monte Carlo significance
    std::size_t bootstrap_draws = 1000;
    std::optional<std::uint64_t> seed;
    double level = 0.95;

    SynthSpec synth;                   // synth command payload

    std::string out;                   // output CSV path (sidecar: out + .json)
    bool grid = false;                 // also emit matrix-layout CSV
};

// Static validation; returns violations (empty = valid), never throws.
std::vector<std::string> validate(const RunConfig& cfg);

struct RunResult {
    std::vector<std::string> files; // paths written, main output first
};

// Executes a validated config; throws the error taxonomy on failure.
RunResult run(const RunConfig& cfg);

// Serialize/restore a config from the sidecar's "config" object.
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_sidecar(const std::string& sidecar_json);

} // namespace wavesync
