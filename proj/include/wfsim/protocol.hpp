#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wfsim/density.hpp"
#include "wfsim/dynamics_model.hpp"
#include "wfsim/gates.hpp"
#include "wfsim/layout.hpp"
#include "wfsim/state.hpp"

namespace wfsim {

enum class StepKind {
    gate,
    query_definite,
    query_which,
    classical_message,
    collapse_point,
    snapshot,
};

std::string_view to_string(StepKind kind);

/// One labeled step of a protocol. Gate steps carry a GateSpec; collapse
/// points name the register a collapse model would measure there; classical
/// messages carry text and never touch amplitudes.
struct ProtocolStep {
    std::string label;
    StepKind kind = StepKind::snapshot;
    std::optional<GateSpec> gate;
    std::string subsystem;
    std::string message;
    bool reversible = false;

    static ProtocolStep make_gate(std::string label, GateSpec gate, bool reversible = true);
    static ProtocolStep make_query(std::string label, StepKind kind);
    static ProtocolStep make_message(std::string label, std::string message);
    static ProtocolStep make_collapse_point(std::string label, std::string subsystem);
    static ProtocolStep make_snapshot(std::string label);
};

/// An inspectable, ordered experiment: layout, initial register values, and
/// labeled steps. Scripts are immutable once built; execution owns its own
/// evolving state.
struct ProtocolScript {
    RegisterLayout layout;
    std::map<std::string, std::size_t> initial_values;
    std::vector<ProtocolStep> steps;
    double theta = 0.0;

    std::string scenario;              // "wigner" | "necker"
    std::string query;                 // "definite" | "which" | ""
    std::string memory_register;       // the inside observer's memory ("bob", "percept")
    std::string record_register;       // the persistent record ("paper", "ancilla")
    std::size_t record_written_value = 0;  // record value in the return target

    /// Deterministic fingerprint used to match reports built from the same
    /// script.
    std::string id() const;

    const ProtocolStep* find_step(std::string_view label) const;
};

struct WignerOptions {
    double theta;
    bool which_query = false;          // contrast query: CNOT memory -> record
    std::optional<GateSpec> mixer;     // optional extra gate before the reversal
};

/// The five-register cat-box experiment. Forward steps entangle
/// atom -> poison -> cat -> bob, the paper is written by the chosen query,
/// and the reversal undoes the entangling cascade (never the paper write).
/// A collapse point labeled "bob_observes" sits right after Bob looks.
ProtocolScript build_wigner_script(double theta);
ProtocolScript build_wigner_script(const WignerOptions& options);

/// Two-register bistable-percept preset: rotate the percept mid-flip,
/// record it into an ancilla, then (optionally) undo both. With
/// undo = false the which-path record is kept and the percept decoheres.
ProtocolScript build_necker_script(double omega_t, bool undo = true);

/// Writes "yes, the memory register holds a definite value" into the record.
/// The answer is identical in every branch (a qubit memory is always in some
/// pointer state), so this is an unconditional flip of the record register
/// and the record stays unentangled. For a higher-dimensional memory this
/// would be a projector-controlled write with the same branch-independent
/// answer. Requires a blank record.
PureState query_definite(const PureState& state, std::string_view record = "paper");

/// Writes *which* value the memory register holds into the record
/// (CNOT memory -> record). The record entangles with the branch, and
/// reversing the entangling cascade alone no longer restores the initial
/// state. Requires a blank record.
PureState query_which(const PureState& state, std::string_view memory = "bob",
                      std::string_view record = "paper");

/// Inverse gates of the script's reversible steps, in reverse order.
/// Irreversible steps (record writes, classical messages) are excluded.
ProtocolScript reverse_steps(const ProtocolScript& script);

struct CollapseEvent {
    std::string step_label;
    std::string subsystem;
    std::size_t outcome = 0;
    double prob = 0.0;
};

/// Per-step observability of a run: norms, fidelity to the initial state,
/// per-register entropies and the record register's purity, plus the states
/// captured at snapshot steps.
struct TraceRow {
    std::string label;
    StepKind kind = StepKind::snapshot;
    double norm = 0.0;
    double fidelity_to_initial = 0.0;
    std::vector<double> entropy_bits;  // one per register, layout order
    double record_purity = 1.0;
    PureState state;
};

struct RunTrace {
    std::vector<TraceRow> rows;  // row 0 is the prepared initial state
    std::map<std::string, PureState> snapshots;
    std::optional<CollapseEvent> collapse;

    const PureState& final_state() const { return rows.back().state; }
    const TraceRow* find_row(std::string_view label) const;
};

struct StepEffect {
    std::optional<CollapseEvent> collapse;
};

/// Applies one step to the state. Collapse points fire only when the model
/// is collapse_at with a matching label. Returns what happened.
StepEffect execute_step(PureState& state, const ProtocolScript& script, const ProtocolStep& step,
                        const DynamicsModel& model, std::mt19937_64& rng);

/// Executes every step in order, recording one TraceRow per step (plus the
/// prepared state). Throws invariant_violation if any norm drifts beyond
/// tolerance.
RunTrace run_script(const ProtocolScript& script, const DynamicsModel& model, std::mt19937_64& rng);

/// The state a faithful reversal should return to: the initial values with
/// the record register set to its written value.
PureState return_target(const ProtocolScript& script);

/// Validates that a collapse_at model references a collapse_point label and
/// a register present in the script. Throws std::invalid_argument.
void validate_model(const ProtocolScript& script, const DynamicsModel& model);

}  // namespace wfsim
