#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wfsim/dynamics_model.hpp"
#include "wfsim/protocol.hpp"

namespace wfsim {

/// Fully resolved run configuration. Field names double as the keys of the
/// flat scenario-file format and as the `config` block of every report.
struct ScenarioConfig {
    std::string scenario = "wigner";   // wigner | necker
    double theta = 0.0;                // radians; the necker preset reads it as omega*t
    std::string model = "unitary";     // unitary | collapse
    std::string collapse_step;         // required (and defaulted) iff model=collapse
    std::size_t n_trajectories = 10000;
    std::uint64_t master_seed = 42;
    std::string output = "text";       // json | csv | text
    std::string query = "definite";    // definite | which

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Default configuration: wigner at theta = pi/2, unitary dynamics,
/// definite query, 10^4 trajectories, seed 42, text output.
ScenarioConfig default_config();

/// Parses an angle given either as a float in radians or as one of the
/// literals "pi/2", "pi/3", "pi/4", "pi/6".
double parse_angle(std::string_view text);

/// Flat key-value scenario format: one `key = value` per line, `#` comments
/// and blank lines ignored. Keys are the ScenarioConfig field names; the
/// angle key may be spelled `theta` or `omega_t`. Unknown keys are errors.
/// Parsing starts from the defaults, so partial files are fine.
ScenarioConfig parse_scenario_text(std::string_view text);
ScenarioConfig load_scenario_file(const std::string& path);

/// The config rendered back in the scenario-file format.
std::string to_scenario_text(const ScenarioConfig& config);

/// Builds the preset script the config names. The necker preset maps
/// query=definite to observe-then-undo and query=which to keeping the
/// ancilla record (no undo).
ProtocolScript make_script(const ScenarioConfig& config);

/// The dynamics model the config names. For model=collapse the measured
/// subsystem is the one declared at the script's collapse point.
DynamicsModel make_model(const ScenarioConfig& config, const ProtocolScript& script);

}  // namespace wfsim
