#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "wfsim/protocol.hpp"
#include "wfsim/rng.hpp"

namespace wfsim {

/// Projective measurement of one subsystem, recorded as a dynamics event.
/// Same contract as measure(): Born-sampled outcome, renormalized branch.
MeasurementResult collapse_step(const PureState& state, std::string_view subsystem, std::mt19937_64& rng);

/// What one seeded trajectory produced: the state after the last step, the
/// collapse event (if the model fired one), the squared overlap with the
/// script's return target, and a single joint readout of the final state.
struct TrajectoryResult {
    PureState final_state;
    std::optional<CollapseEvent> collapse;
    double return_fidelity = 0.0;
    std::vector<std::size_t> readout;
};

/// Executes the script once under `model` with the generator derived from
/// (master_seed, index). Lean loop: no per-step traces are recorded.
TrajectoryResult run_single_trajectory(const ProtocolScript& script, const DynamicsModel& model,
                                       std::uint64_t master_seed, std::uint64_t index);

/// Outcome statistics of the wager: how often the reversal really returns
/// the laboratory, and what the end-of-run readouts look like, under one
/// dynamics model.
struct BetReport {
    DynamicsModel model;
    std::string script_id;
    std::size_t n_trajectories = 0;
    std::uint64_t master_seed = 0;

    double mean_return_fidelity = 0.0;
    double se_return_fidelity = 0.0;   // sample standard error of the mean
    double freq_cat_alive_final = 0.0;
    double se_cat_alive = 0.0;         // binomial standard error
    double freq_atom_decayed_final = 0.0;
    double se_atom_decayed = 0.0;      // binomial standard error

    /// Collapse outcome per trajectory ("none" under unitary-only dynamics).
    std::map<std::string, std::size_t> branch_counts;
    /// Joint final readout, digits concatenated in register order.
    std::map<std::string, std::size_t> readout_counts;
};

/// n independent seeded trajectories, aggregated. The script must contain
/// "atom" and "cat" registers (the bet's observables). Deterministic in
/// (script, model, n, master_seed).
BetReport run_trajectories(const ProtocolScript& script, const DynamicsModel& model, std::size_t n,
                           std::uint64_t master_seed);

/// How far apart two models' end-of-run statistics are, and how loudly the
/// data votes. z-scores are pooled two-proportion values, reported only for
/// n >= 100 where the normal approximation is defensible.
struct DistinguishingPower {
    double tv_distance = 0.0;  // total variation over the joint readout tables
    std::optional<double> z_atom_decayed;
    std::optional<double> z_cat_alive;
    /// Trajectories per arm for a 5-sigma separation of the atom observable;
    /// absent when the observed frequencies agree exactly.
    std::optional<double> trajectories_for_5_sigma;
};

/// Requires reports built from the same script and trajectory count.
DistinguishingPower distinguishing_power(const BetReport& a, const BetReport& b);

}  // namespace wfsim
