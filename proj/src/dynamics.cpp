#include "wfsim/dynamics.hpp"

#include <fmt/format.h>

#include <cmath>

namespace wfsim {

MeasurementResult collapse_step(const PureState& state, std::string_view subsystem, std::mt19937_64& rng) {
    return measure(state, subsystem, rng);
}

TrajectoryResult run_single_trajectory(const ProtocolScript& script, const DynamicsModel& model,
                                       std::uint64_t master_seed, std::uint64_t index) {
    std::mt19937_64 rng = trajectory_rng(master_seed, index);
    PureState state = make_basis_state(script.layout, script.initial_values);

    std::optional<CollapseEvent> collapse;
    for (const auto& step : script.steps) {
        StepEffect effect = execute_step(state, script, step, model, rng);
        if (effect.collapse) collapse = std::move(effect.collapse);
    }
    if (std::abs(state.norm() - 1.0) > tol::norm) {
        throw invariant_violation(
            fmt::format("trajectory {}: final norm {:.17g} drifted beyond tolerance", index, state.norm()));
    }

    double return_fidelity = fidelity(state, return_target(script));
    std::vector<std::size_t> readout = sample_readout(state, rng);
    return TrajectoryResult{std::move(state), std::move(collapse), return_fidelity, std::move(readout)};
}

namespace {

std::string readout_key(const std::vector<std::size_t>& readout) {
    std::string key;
    key.reserve(readout.size());
    for (std::size_t digit : readout) key += std::to_string(digit);
    return key;
}

}  // namespace

BetReport run_trajectories(const ProtocolScript& script, const DynamicsModel& model, std::size_t n,
                           std::uint64_t master_seed) {
    if (n < 1) throw std::invalid_argument("trajectories: n must be >= 1");
    validate_model(script, model);
    if (!script.layout.has("atom") || !script.layout.has("cat")) {
        throw std::invalid_argument("trajectories: script lacks the bet's observables (atom, cat registers)");
    }
    const std::size_t atom_pos = script.layout.position("atom");
    const std::size_t cat_pos = script.layout.position("cat");

    BetReport report;
    report.model = model;
    report.script_id = script.id();
    report.n_trajectories = n;
    report.master_seed = master_seed;

    double fid_sum = 0.0;
    double fid_sumsq = 0.0;
    std::size_t cat_alive = 0;
    std::size_t atom_decayed = 0;

    for (std::size_t i = 0; i < n; ++i) {
        TrajectoryResult traj = run_single_trajectory(script, model, master_seed, i);
        fid_sum += traj.return_fidelity;
        fid_sumsq += traj.return_fidelity * traj.return_fidelity;
        if (traj.readout[cat_pos] == 0) ++cat_alive;
        if (traj.readout[atom_pos] != 0) ++atom_decayed;
        report.branch_counts[traj.collapse ? std::to_string(traj.collapse->outcome) : "none"] += 1;
        report.readout_counts[readout_key(traj.readout)] += 1;
    }

    const double nd = static_cast<double>(n);
    report.mean_return_fidelity = fid_sum / nd;
    if (n > 1) {
        // Unbiased sample variance; clamp the FP-cancellation residue.
        double var = (fid_sumsq - fid_sum * fid_sum / nd) / (nd - 1.0);
        report.se_return_fidelity = std::sqrt(std::max(0.0, var) / nd);
    }
    report.freq_cat_alive_final = static_cast<double>(cat_alive) / nd;
    report.freq_atom_decayed_final = static_cast<double>(atom_decayed) / nd;
    report.se_cat_alive = std::sqrt(report.freq_cat_alive_final * (1.0 - report.freq_cat_alive_final) / nd);
    report.se_atom_decayed =
        std::sqrt(report.freq_atom_decayed_final * (1.0 - report.freq_atom_decayed_final) / nd);
    return report;
}

namespace {

// Pooled two-proportion z statistic. Equal frequencies give 0 even when the
// pooled variance vanishes (both arms deterministic).
double two_proportion_z(double pa, double pb, double na, double nb) {
    if (pa == pb) return 0.0;
    double pooled = (pa * na + pb * nb) / (na + nb);
    double var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
    return (pa - pb) / std::sqrt(var);
}

}  // namespace

DistinguishingPower distinguishing_power(const BetReport& a, const BetReport& b) {
    if (a.script_id != b.script_id) {
        throw std::invalid_argument("bet: reports were built from different scripts");
    }
    if (a.n_trajectories != b.n_trajectories) {
        throw std::invalid_argument(fmt::format("bet: trajectory counts differ ({} vs {})", a.n_trajectories,
                                                b.n_trajectories));
    }

    DistinguishingPower power;
    const double na = static_cast<double>(a.n_trajectories);
    const double nb = static_cast<double>(b.n_trajectories);

    double l1 = 0.0;
    for (const auto& [key, count] : a.readout_counts) {
        double pa = static_cast<double>(count) / na;
        auto it = b.readout_counts.find(key);
        double pb = it == b.readout_counts.end() ? 0.0 : static_cast<double>(it->second) / nb;
        l1 += std::abs(pa - pb);
    }
    for (const auto& [key, count] : b.readout_counts) {
        if (!a.readout_counts.count(key)) l1 += static_cast<double>(count) / nb;
    }
    power.tv_distance = 0.5 * l1;

    if (a.n_trajectories >= 100 && b.n_trajectories >= 100) {
        power.z_atom_decayed = two_proportion_z(a.freq_atom_decayed_final, b.freq_atom_decayed_final, na, nb);
        power.z_cat_alive = two_proportion_z(a.freq_cat_alive_final, b.freq_cat_alive_final, na, nb);
    }

    const double pa = a.freq_atom_decayed_final;
    const double pb = b.freq_atom_decayed_final;
    const double delta = std::abs(pa - pb);
    if (delta > 0.0) {
        double var_sum = pa * (1.0 - pa) + pb * (1.0 - pb);
        power.trajectories_for_5_sigma = std::max(1.0, std::ceil(25.0 * var_sum / (delta * delta)));
    }
    return power;
}

}  // namespace wfsim
