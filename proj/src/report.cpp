#include "wfsim/report.hpp"

#include <fmt/format.h>

#include <json.hpp>

namespace wfsim {

namespace {

using nlohmann::json;

// The step whose state carries the full entanglement, before any reversal.
const TraceRow& mid_row(const ProtocolScript& script, const RunTrace& trace) {
    const TraceRow* row = trace.find_row(script.scenario == "necker" ? "observe" : "mid_snapshot");
    return row != nullptr ? *row : trace.rows.back();
}

json config_json(const ScenarioConfig& config, const ProtocolScript& script) {
    json j;
    j["scenario"] = config.scenario;
    j["theta"] = config.theta;
    j["model"] = config.model;
    if (!config.collapse_step.empty()) j["collapse_step"] = config.collapse_step;
    j["n_trajectories"] = config.n_trajectories;
    j["master_seed"] = config.master_seed;
    j["output"] = config.output;
    j["query"] = config.query;
    json registers = json::array();
    for (const auto& reg : script.layout.subsystems()) registers.push_back(reg.name);
    j["registers"] = registers;
    return j;
}

json trace_json(const ProtocolScript& script, const RunTrace& trace) {
    json rows = json::array();
    for (const TraceRow& row : trace.rows) {
        json r;
        r["label"] = row.label;
        r["kind"] = std::string(to_string(row.kind));
        r["norm"] = row.norm;
        r["fidelity_to_initial"] = row.fidelity_to_initial;
        json entropies;
        for (std::size_t i = 0; i < row.entropy_bits.size(); ++i) {
            entropies[script.layout.name_at(i)] = row.entropy_bits[i];
        }
        r["entropy_bits"] = entropies;
        r["record_purity"] = row.record_purity;
        rows.push_back(std::move(r));
    }
    return rows;
}

json collapse_json(const CollapseEvent& event) {
    json j;
    j["step"] = event.step_label;
    j["subsystem"] = event.subsystem;
    j["outcome"] = event.outcome;
    j["prob"] = event.prob;
    return j;
}

json metrics_json(const ScenarioConfig&, const ProtocolScript& script, const RunTrace& trace) {
    const TraceRow& mid = mid_row(script, trace);
    const CoherenceWitness mid_witness = coherence_witness(mid.state, script.memory_register);
    const CoherenceWitness final_witness = coherence_witness(trace.final_state(), script.memory_register);

    double purity_min = 1.0;
    for (const TraceRow& row : trace.rows) purity_min = std::min(purity_min, row.record_purity);

    json m;
    m["script_id"] = script.id();
    m["fidelity_final"] = fidelity(trace.final_state(), return_target(script));
    m["record_purity_min"] = purity_min;
    m["entropy_mid_bits"] = [&] {
        json e;
        for (std::size_t i = 0; i < mid.entropy_bits.size(); ++i) {
            e[script.layout.name_at(i)] = mid.entropy_bits[i];
        }
        return e;
    }();
    m["branch_count_mid"] = count_branches(mid.state);
    m["coherence_mid"] = {{"global", mid_witness.global_offdiag}, {"reduced", mid_witness.reduced_offdiag}};
    m["coherence_final"] =
        {{"global", final_witness.global_offdiag}, {"reduced", final_witness.reduced_offdiag}};
    if (trace.collapse) m["collapse"] = collapse_json(*trace.collapse);
    return m;
}

json model_json(const DynamicsModel& model) {
    json j;
    j["kind"] = model.kind == DynamicsModel::Kind::unitary_only ? "unitary_only" : "collapse_at";
    if (model.kind == DynamicsModel::Kind::collapse_at) {
        j["step_label"] = model.step_label;
        j["subsystem"] = model.subsystem;
    }
    return j;
}

json bet_report_json(const BetReport& report) {
    json j;
    j["model"] = model_json(report.model);
    j["script_id"] = report.script_id;
    j["n_trajectories"] = report.n_trajectories;
    j["master_seed"] = report.master_seed;
    j["mean_return_fidelity"] = report.mean_return_fidelity;
    j["se_return_fidelity"] = report.se_return_fidelity;
    j["freq_cat_alive_final"] = report.freq_cat_alive_final;
    j["se_cat_alive"] = report.se_cat_alive;
    j["freq_atom_decayed_final"] = report.freq_atom_decayed_final;
    j["se_atom_decayed"] = report.se_atom_decayed;
    j["branch_counts"] = report.branch_counts;
    j["readout_counts"] = report.readout_counts;
    return j;
}

json power_json(const DistinguishingPower& power) {
    json j;
    j["tv_distance"] = power.tv_distance;
    if (power.z_atom_decayed) j["z_atom_decayed"] = *power.z_atom_decayed;
    if (power.z_cat_alive) j["z_cat_alive"] = *power.z_cat_alive;
    if (power.trajectories_for_5_sigma) j["trajectories_for_5_sigma"] = *power.trajectories_for_5_sigma;
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

constexpr std::string_view kRunHeader = "step                 kind               norm          fid->initial  S_mem(bits)   purity(rec)";

std::string run_text(const ScenarioConfig& config, const ProtocolScript& script, const RunTrace& trace) {
    const std::size_t mem_pos = script.layout.position(script.memory_register);
    std::string out = fmt::format("{} protocol  theta={:.9g}  model={}  query={}  seed={}\n", config.scenario,
                                  config.theta, config.model, config.query, config.master_seed);
    out += fmt::format("{}\n", kRunHeader);
    for (const TraceRow& row : trace.rows) {
        out += fmt::format("{:<20} {:<18} {:<13.10f} {:<13.10f} {:<13.10f} {:<13.10f}\n", row.label,
                           to_string(row.kind), row.norm, row.fidelity_to_initial, row.entropy_bits[mem_pos],
                           row.record_purity);
    }

    bool any_message = false;
    for (const auto& step : script.steps) {
        if (step.kind != StepKind::classical_message) continue;
        if (!any_message) out += "messages:\n";
        any_message = true;
        out += fmt::format("  {}: {}\n", step.label, step.message);
    }

    const TraceRow& mid = mid_row(script, trace);
    const CoherenceWitness witness = coherence_witness(mid.state, script.memory_register);
    double purity_min = 1.0;
    for (const TraceRow& row : trace.rows) purity_min = std::min(purity_min, row.record_purity);

    out += "summary:\n";
    out += fmt::format("  fidelity to return target: {:.12f}\n",
                       fidelity(trace.final_state(), return_target(script)));
    out += fmt::format("  record purity (min over run): {:.12f}\n", purity_min);
    out += fmt::format("  mid-point branches: {}  coherence global={:.6f} reduced={:.6f}\n",
                       count_branches(mid.state), witness.global_offdiag, witness.reduced_offdiag);
    if (trace.collapse) {
        out += fmt::format("  collapse at '{}' on {}: outcome {} (prob {:.6f})\n", trace.collapse->step_label,
                           trace.collapse->subsystem, trace.collapse->outcome, trace.collapse->prob);
    }
    return out;
}

std::string run_csv(const ProtocolScript& script, const RunTrace& trace) {
    std::string out = "step,kind,norm,fidelity_to_initial";
    for (const auto& reg : script.layout.subsystems()) out += fmt::format(",entropy_{}", reg.name);
    out += ",record_purity\n";
    for (const TraceRow& row : trace.rows) {
        out += fmt::format("{},{},{:.17g},{:.17g}", row.label, to_string(row.kind), row.norm,
                           row.fidelity_to_initial);
        for (double bits : row.entropy_bits) out += fmt::format(",{:.17g}", bits);
        out += fmt::format(",{:.17g}\n", row.record_purity);
    }
    return out;
}

std::string bet_text(const ScenarioConfig& config, const BetPair& pair) {
    auto block = [](const BetReport& report) {
        std::string out = fmt::format("model {}:\n", report.model.describe());
        out += fmt::format("  mean return fidelity: {:.6f} (se {:.6f})\n", report.mean_return_fidelity,
                           report.se_return_fidelity);
        out += fmt::format("  freq cat alive:       {:.6f} (se {:.6f})\n", report.freq_cat_alive_final,
                           report.se_cat_alive);
        out += fmt::format("  freq atom decayed:    {:.6f} (se {:.6f})\n", report.freq_atom_decayed_final,
                           report.se_atom_decayed);
        out += "  branch counts:";
        for (const auto& [outcome, count] : report.branch_counts) {
            out += fmt::format(" {}={}", outcome, count);
        }
        out += "\n";
        return out;
    };

    std::string out = fmt::format("bet: {} trajectories at theta={:.9g}, seed {}\n", config.n_trajectories,
                                  config.theta, config.master_seed);
    out += block(pair.unitary);
    out += block(pair.collapse);
    out += fmt::format("tv distance (joint readout): {:.6f}\n", pair.power.tv_distance);
    if (pair.power.z_atom_decayed) {
        out += fmt::format("z(atom decayed) = {:.3f}, z(cat alive) = {:.3f}\n", *pair.power.z_atom_decayed,
                           *pair.power.z_cat_alive);
    }
    if (pair.power.trajectories_for_5_sigma) {
        out += fmt::format("trajectories per arm for 5 sigma on the atom observable: {:.0f}\n",
                           *pair.power.trajectories_for_5_sigma);
    }
    return out;
}

std::string bet_csv(const BetPair& pair) {
    std::string out =
        "model,n_trajectories,master_seed,mean_return_fidelity,se_return_fidelity,"
        "freq_cat_alive_final,se_cat_alive,freq_atom_decayed_final,se_atom_decayed\n";
    auto row = [](const BetReport& r) {
        return fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.model.describe(),
                           r.n_trajectories, r.master_seed, r.mean_return_fidelity, r.se_return_fidelity,
                           r.freq_cat_alive_final, r.se_cat_alive, r.freq_atom_decayed_final,
                           r.se_atom_decayed);
    };
    out += row(pair.unitary);
    out += row(pair.collapse);
    out += "\ntv_distance\n";
    out += fmt::format("{:.17g}\n", pair.power.tv_distance);
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "theta,entropy_bob_bits,purity_paper,fidelity_final\n";
    for (const SweepRow& row : rows) {
        out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", row.theta, row.entropy_bob_bits,
                           row.purity_paper, row.fidelity_final);
    }
    return out;
}

std::string sweep_text(const std::vector<SweepRow>& rows) {
    std::string out = "theta        S(bob) bits  purity(paper)  fidelity(final)\n";
    for (const SweepRow& row : rows) {
        out += fmt::format("{:<12.9f} {:<12.9f} {:<14.9f} {:<14.9f}\n", row.theta, row.entropy_bob_bits,
                           row.purity_paper, row.fidelity_final);
    }
    return out;
}

}  // namespace

std::string render_run_report(const ScenarioConfig& config, const ProtocolScript& script,
                              const RunTrace& trace) {
    if (config.output == "csv") return run_csv(script, trace);
    if (config.output == "text") return run_text(config, script, trace);
    json j;
    j["config"] = config_json(config, script);
    j["trace"] = trace_json(script, trace);
    j["metrics"] = metrics_json(config, script, trace);
    j["version"] = artifact_version;
    return dump(j);
}

std::string render_bet_report(const ScenarioConfig& config, const ProtocolScript& script,
                              const RunTrace& reference_trace, const BetPair& pair) {
    if (config.output == "csv") return bet_csv(pair);
    if (config.output == "text") return bet_text(config, pair);
    json j;
    j["config"] = config_json(config, script);
    j["trace"] = trace_json(script, reference_trace);
    j["metrics"] = metrics_json(config, script, reference_trace);
    j["bet"] = {{"unitary", bet_report_json(pair.unitary)},
                {"collapse", bet_report_json(pair.collapse)},
                {"distinguishing_power", power_json(pair.power)}};
    j["version"] = artifact_version;
    return dump(j);
}

std::string render_sweep_report(const ScenarioConfig& config, const SweepParams& params,
                                const std::vector<SweepRow>& rows) {
    if (config.output == "csv") return sweep_csv(rows);
    if (config.output == "text") return sweep_text(rows);

    json j;
    json sweep_rows = json::array();
    for (const SweepRow& row : rows) {
        sweep_rows.push_back({{"theta", row.theta},
                              {"entropy_bob_bits", row.entropy_bob_bits},
                              {"purity_paper", row.purity_paper},
                              {"fidelity_final", row.fidelity_final}});
    }
    ProtocolScript script = build_wigner_script(config.theta);
    j["config"] = config_json(config, script);
    j["config"]["sweep"] = {{"theta_min", params.theta_min},
                            {"theta_max", params.theta_max},
                            {"steps", params.steps}};
    j["metrics"] = {{"sweep", sweep_rows}};
    j["trace"] = json::array();
    j["version"] = artifact_version;
    return dump(j);
}

}  // namespace wfsim
