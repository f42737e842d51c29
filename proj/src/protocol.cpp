#include "wfsim/protocol.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

namespace wfsim {

std::string_view to_string(StepKind kind) {
    switch (kind) {
        case StepKind::gate: return "gate";
        case StepKind::query_definite: return "query_definite";
        case StepKind::query_which: return "query_which";
        case StepKind::classical_message: return "classical_message";
        case StepKind::collapse_point: return "collapse_point";
        case StepKind::snapshot: return "snapshot";
    }
    return "unknown";
}

ProtocolStep ProtocolStep::make_gate(std::string label, GateSpec gate, bool reversible) {
    ProtocolStep step;
    step.label = std::move(label);
    step.kind = StepKind::gate;
    step.gate = std::move(gate);
    step.reversible = reversible;
    return step;
}

ProtocolStep ProtocolStep::make_query(std::string label, StepKind kind) {
    if (kind != StepKind::query_definite && kind != StepKind::query_which) {
        throw std::invalid_argument("step: make_query requires a query kind");
    }
    ProtocolStep step;
    step.label = std::move(label);
    step.kind = kind;
    return step;
}

ProtocolStep ProtocolStep::make_message(std::string label, std::string message) {
    ProtocolStep step;
    step.label = std::move(label);
    step.kind = StepKind::classical_message;
    step.message = std::move(message);
    return step;
}

ProtocolStep ProtocolStep::make_collapse_point(std::string label, std::string subsystem) {
    ProtocolStep step;
    step.label = std::move(label);
    step.kind = StepKind::collapse_point;
    step.subsystem = std::move(subsystem);
    return step;
}

ProtocolStep ProtocolStep::make_snapshot(std::string label) {
    ProtocolStep step;
    step.label = std::move(label);
    step.kind = StepKind::snapshot;
    return step;
}

std::string ProtocolScript::id() const {
    std::string labels;
    for (const auto& step : steps) {
        if (!labels.empty()) labels += ',';
        labels += step.label;
    }
    return fmt::format("{}|theta={:.17g}|query={}|steps=[{}]", scenario, theta, query, labels);
}

const ProtocolStep* ProtocolScript::find_step(std::string_view label) const {
    for (const auto& step : steps) {
        if (step.label == label) return &step;
    }
    return nullptr;
}

const TraceRow* RunTrace::find_row(std::string_view label) const {
    for (const auto& row : rows) {
        if (row.label == label) return &row;
    }
    return nullptr;
}

ProtocolScript build_wigner_script(double theta) {
    return build_wigner_script(WignerOptions{theta});
}

ProtocolScript build_wigner_script(const WignerOptions& options) {
    const double theta = options.theta;
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw std::invalid_argument(fmt::format("theta: {:.17g} must lie in (0, pi)", theta));
    }

    ProtocolScript script{.layout = RegisterLayout::qubits({"atom", "poison", "cat", "bob", "paper"})};
    for (const auto& reg : script.layout.subsystems()) script.initial_values[reg.name] = 0;
    script.theta = theta;
    script.scenario = "wigner";
    script.query = options.which_query ? "which" : "definite";
    script.memory_register = "bob";
    script.record_register = "paper";
    script.record_written_value = options.which_query ? 0 : 1;

    // Entangling cascade: each link is controlled on the previous one,
    // mirroring the causal chain decay -> poison -> cat -> Bob.
    script.steps.push_back(ProtocolStep::make_gate("decay", ry(theta, "atom")));
    script.steps.push_back(ProtocolStep::make_gate("release_poison", cnot("atom", "poison")));
    script.steps.push_back(ProtocolStep::make_gate("poison_cat", cnot("poison", "cat")));
    script.steps.push_back(ProtocolStep::make_gate("bob_looks", cnot("cat", "bob")));
    script.steps.push_back(ProtocolStep::make_collapse_point("bob_observes", "bob"));

    ProtocolScript forward = script;  // reversible sub-list so far: the four gates

    script.steps.push_back(ProtocolStep::make_query(
        options.which_query ? "which_query" : "definite_query",
        options.which_query ? StepKind::query_which : StepKind::query_definite));

    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::string alive = options.which_query ? "00000" : "00001";
    script.steps.push_back(ProtocolStep::make_message(
        "alice_second_note",
        fmt::format("alice->bob: the laboratory state is {:.6f}|{}> + {:.6f}|11111> "
                    "(atom,poison,cat,bob,paper); each branch sees one definite cat",
                    c, alive, s)));
    script.steps.push_back(ProtocolStep::make_snapshot("mid_snapshot"));

    if (options.mixer) {
        script.steps.push_back(ProtocolStep::make_gate("mixer", *options.mixer, false));
    }

    // Undo the cascade, never the record write.
    for (auto& step : reverse_steps(forward).steps) script.steps.push_back(std::move(step));
    script.steps.push_back(ProtocolStep::make_snapshot("final_snapshot"));
    return script;
}

ProtocolScript build_necker_script(double omega_t, bool undo) {
    ProtocolScript script{.layout = RegisterLayout::qubits({"percept", "ancilla"})};
    script.initial_values = {{"percept", 0}, {"ancilla", 0}};
    script.theta = omega_t;
    script.scenario = "necker";
    script.query = undo ? "definite" : "which";
    script.memory_register = "percept";
    script.record_register = "ancilla";
    script.record_written_value = 0;

    script.steps.push_back(ProtocolStep::make_gate("mental_flip", ry(omega_t, "percept")));
    script.steps.push_back(ProtocolStep::make_gate("observe", cnot("percept", "ancilla")));
    if (undo) {
        ProtocolScript forward = script;
        for (auto& step : reverse_steps(forward).steps) script.steps.push_back(std::move(step));
    }
    script.steps.push_back(ProtocolStep::make_snapshot("final_snapshot"));
    return script;
}

namespace {

void require_blank_record(const PureState& state, std::string_view record) {
    double weight = 0.0;
    const auto& layout = state.layout();
    const std::size_t pos = layout.position(record);
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (layout.digit_at(i, pos) != 0) weight += std::norm(amps[i]);
    }
    if (weight > 1e-12) {
        throw std::invalid_argument(
            fmt::format("query: record register '{}' is not blank (weight {:.3e} outside |0>)", record, weight));
    }
}

// Swaps record values 0 <-> 1 and leaves any higher values alone; the
// qubit case is a plain X.
GateSpec record_write_gate(const RegisterLayout& layout, std::string_view record) {
    const std::size_t d = layout.dim(record);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(static_cast<long>(d), static_cast<long>(d));
    m(0, 0) = 0;
    m(1, 1) = 0;
    m(0, 1) = 1;
    m(1, 0) = 1;
    return GateSpec("record_write", {std::string(record)}, std::move(m));
}

}  // namespace

PureState query_definite(const PureState& state, std::string_view record) {
    require_blank_record(state, record);
    // "Do you see a definite value?" is answered "yes" in every branch, so
    // the record flips unconditionally and stays unentangled.
    return apply_gate(state, record_write_gate(state.layout(), record));
}

PureState query_which(const PureState& state, std::string_view memory, std::string_view record) {
    require_blank_record(state, record);
    if (state.layout().dim(memory) != 2 || state.layout().dim(record) != 2) {
        throw std::invalid_argument("query: which-query requires qubit memory and record registers");
    }
    return apply_gate(state, cnot(std::string(memory), std::string(record)));
}

ProtocolScript reverse_steps(const ProtocolScript& script) {
    ProtocolScript reversed = script;
    reversed.steps.clear();
    for (auto it = script.steps.rbegin(); it != script.steps.rend(); ++it) {
        if (!it->reversible || it->kind != StepKind::gate) continue;
        reversed.steps.push_back(ProtocolStep::make_gate("undo_" + it->label, adjoint(*it->gate)));
    }
    return reversed;
}

void validate_model(const ProtocolScript& script, const DynamicsModel& model) {
    if (model.kind == DynamicsModel::Kind::unitary_only) return;
    bool found = false;
    for (const auto& step : script.steps) {
        if (step.kind == StepKind::collapse_point && step.label == model.step_label) {
            found = true;
            break;
        }
    }
    if (!found) {
        throw std::invalid_argument(
            fmt::format("collapse_step: no collapse point labeled '{}' in script", model.step_label));
    }
    script.layout.position(model.subsystem);  // throws on unknown register
}

StepEffect execute_step(PureState& state, const ProtocolScript& script, const ProtocolStep& step,
                        const DynamicsModel& model, std::mt19937_64& rng) {
    switch (step.kind) {
        case StepKind::gate:
            state = apply_gate(state, *step.gate);
            return {};
        case StepKind::query_definite:
            state = query_definite(state, script.record_register);
            return {};
        case StepKind::query_which:
            state = query_which(state, script.memory_register, script.record_register);
            return {};
        case StepKind::classical_message:
        case StepKind::snapshot:
            return {};
        case StepKind::collapse_point:
            if (model.kind == DynamicsModel::Kind::collapse_at && model.step_label == step.label) {
                MeasurementResult result = measure(state, model.subsystem, rng);
                state = std::move(result.post_state);
                return {CollapseEvent{step.label, model.subsystem, result.outcome, result.prob}};
            }
            return {};
    }
    return {};
}

RunTrace run_script(const ProtocolScript& script, const DynamicsModel& model, std::mt19937_64& rng) {
    validate_model(script, model);

    PureState state = make_basis_state(script.layout, script.initial_values);
    const PureState initial = state;
    RunTrace trace;

    const auto record_row = [&](const std::string& label, StepKind kind) {
        TraceRow row{label, kind, state.norm(), fidelity(initial, state), {}, 1.0, state};
        row.entropy_bits.reserve(script.layout.num_registers());
        for (const auto& reg : script.layout.subsystems()) {
            row.entropy_bits.push_back(von_neumann_entropy(partial_trace(state, {reg.name})));
        }
        if (!script.record_register.empty()) {
            row.record_purity = purity(partial_trace(state, {script.record_register}));
        }
        if (std::abs(row.norm - 1.0) > tol::norm) {
            throw invariant_violation(
                fmt::format("run: norm {:.17g} after step '{}' drifted beyond tolerance", row.norm, label));
        }
        trace.rows.push_back(std::move(row));
    };

    record_row("prepare", StepKind::snapshot);
    for (const auto& step : script.steps) {
        StepEffect effect = execute_step(state, script, step, model, rng);
        if (effect.collapse) trace.collapse = effect.collapse;
        record_row(step.label, step.kind);
        if (step.kind == StepKind::snapshot) trace.snapshots.emplace(step.label, state);
    }
    return trace;
}

PureState return_target(const ProtocolScript& script) {
    std::map<std::string, std::size_t> values = script.initial_values;
    if (!script.record_register.empty()) {
        values[script.record_register] = script.record_written_value;
    }
    return make_basis_state(script.layout, values);
}

}  // namespace wfsim
