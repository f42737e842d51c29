#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wfsim/density.hpp"
#include "wfsim/state.hpp"

namespace wfsim {

struct Branch {
    std::size_t outcome = 0;
    double weight = 0.0;
    PureState conditional_state;
};

/// The state split along one register's computational basis: normalized
/// conditional states with Born weights. Interpretation-neutral bookkeeping
/// (a "branch" here is a vector component, nothing more).
struct BranchDecomposition {
    std::string pointer_subsystem;
    std::vector<Branch> branches;  // zero-weight outcomes omitted, outcome order
};

BranchDecomposition branch_decomposition(const PureState& state, std::string_view pointer);

/// The global density matrix with coherences between the pointer's basis
/// sectors erased: sum of weight * |branch><branch|.
DensityMatrix pointer_dephased(const PureState& state, std::string_view pointer);

/// Trace distance between the two reduced states on `subsystem`. Zero means
/// no experiment confined to that register can tell the global situations
/// apart.
double local_indistinguishability(const PureState& a, const PureState& b, std::string_view subsystem);
double local_indistinguishability(const PureState& a, const DensityMatrix& rho_b, std::string_view subsystem);

/// Where the superposition lives. `global_offdiag` is the Frobenius norm of
/// the global density matrix block between the two largest branches;
/// `reduced_offdiag` is the corresponding coherence of the pointer's reduced
/// state. Global > 0 with reduced ~ 0 is the signature of "entangled, so
/// locally mixed rather than locally superposed".
struct CoherenceWitness {
    double global_offdiag = 0.0;
    double reduced_offdiag = 0.0;
};

/// Returns zeros when the state has fewer than two branches along `pointer`.
CoherenceWitness coherence_witness(const PureState& state, std::string_view pointer);

struct SweepRow {
    double theta = 0.0;
    double entropy_bob_bits = 0.0;  // memory entropy after the cascade
    double purity_paper = 0.0;      // minimum record purity across the run
    double fidelity_final = 0.0;    // squared overlap with the return target
};

/// One unitary-only definite-query run per grid angle. Grid values must lie
/// in (0, pi).
std::vector<SweepRow> entropy_sweep(const std::vector<double>& theta_grid);

}  // namespace wfsim
