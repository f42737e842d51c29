#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wfsim/analysis.hpp"
#include "wfsim/dynamics.hpp"
#include "wfsim/protocol.hpp"
#include "wfsim/scenario.hpp"

namespace wfsim {

inline constexpr std::string_view artifact_version = "0.1.0";

/// Both arms of the wager plus their separation, as produced by cmd_bet.
struct BetPair {
    BetReport unitary;
    BetReport collapse;
    DistinguishingPower power;
};

struct SweepParams {
    double theta_min = 0.0;
    double theta_max = 0.0;
    std::size_t steps = 0;
};

/// Renderers dispatch on config.output (json | csv | text). JSON reports are
/// deterministic byte-for-byte for a fixed config and seed; the top-level
/// keys are config, trace, metrics, bet (bet reports only) and version.
std::string render_run_report(const ScenarioConfig& config, const ProtocolScript& script,
                              const RunTrace& trace);
std::string render_bet_report(const ScenarioConfig& config, const ProtocolScript& script,
                              const RunTrace& reference_trace, const BetPair& pair);
std::string render_sweep_report(const ScenarioConfig& config, const SweepParams& params,
                                const std::vector<SweepRow>& rows);

}  // namespace wfsim
