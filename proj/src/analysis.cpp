#include "wfsim/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wfsim/protocol.hpp"

namespace wfsim {

BranchDecomposition branch_decomposition(const PureState& state, std::string_view pointer) {
    const auto& layout = state.layout();
    const std::size_t pos = layout.position(pointer);
    const std::size_t d = layout.dim(pointer);
    const auto& amps = state.amplitudes();

    BranchDecomposition decomp;
    decomp.pointer_subsystem = std::string(pointer);
    for (std::size_t value = 0; value < d; ++value) {
        double weight = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (layout.digit_at(i, pos) == value) weight += std::norm(amps[i]);
        }
        if (weight <= 1e-12) continue;

        std::vector<cdouble> projected(amps.size(), cdouble(0.0, 0.0));
        const double scale = 1.0 / std::sqrt(weight);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            if (layout.digit_at(i, pos) == value) projected[i] = amps[i] * scale;
        }
        decomp.branches.push_back(Branch{value, weight, PureState(layout, std::move(projected))});
    }
    return decomp;
}

DensityMatrix pointer_dephased(const PureState& state, std::string_view pointer) {
    const auto n = static_cast<Eigen::Index>(state.dim());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    for (const Branch& branch : branch_decomposition(state, pointer).branches) {
        Eigen::Map<const Eigen::VectorXcd> psi(branch.conditional_state.amplitudes().data(), n);
        rho.noalias() += branch.weight * (psi * psi.adjoint());
    }
    return DensityMatrix(state.layout(), std::move(rho));
}

double local_indistinguishability(const PureState& a, const PureState& b, std::string_view subsystem) {
    if (!(a.layout() == b.layout())) {
        throw std::invalid_argument("indistinguishability: states live on different layouts");
    }
    return trace_distance(partial_trace(a, {std::string(subsystem)}),
                          partial_trace(b, {std::string(subsystem)}));
}

double local_indistinguishability(const PureState& a, const DensityMatrix& rho_b, std::string_view subsystem) {
    if (!(a.layout() == rho_b.layout())) {
        throw std::invalid_argument("indistinguishability: state and density matrix live on different layouts");
    }
    return trace_distance(partial_trace(a, {std::string(subsystem)}),
                          partial_trace(rho_b, {std::string(subsystem)}));
}

CoherenceWitness coherence_witness(const PureState& state, std::string_view pointer) {
    BranchDecomposition decomp = branch_decomposition(state, pointer);
    if (decomp.branches.size() < 2) return {};

    auto by_weight = [](const Branch& x, const Branch& y) { return x.weight > y.weight; };
    std::partial_sort(decomp.branches.begin(), decomp.branches.begin() + 2, decomp.branches.end(), by_weight);
    const Branch& first = decomp.branches[0];
    const Branch& second = decomp.branches[1];

    // For a pure global state the block between sectors v and w is the outer
    // product of the two projected components, so its Frobenius norm is the
    // product of their norms.
    CoherenceWitness witness;
    witness.global_offdiag = std::sqrt(first.weight) * std::sqrt(second.weight);

    DensityMatrix reduced = partial_trace(state, {std::string(pointer)});
    witness.reduced_offdiag = std::abs(
        reduced.matrix()(static_cast<Eigen::Index>(first.outcome), static_cast<Eigen::Index>(second.outcome)));
    return witness;
}

std::vector<SweepRow> entropy_sweep(const std::vector<double>& theta_grid) {
    std::vector<SweepRow> rows;
    rows.reserve(theta_grid.size());
    std::mt19937_64 rng(0);  // unitary-only runs never draw from it

    for (double theta : theta_grid) {
        if (!(theta > 0.0 && theta < std::numbers::pi)) {
            throw std::invalid_argument(fmt::format("sweep: theta {:.17g} outside (0, pi)", theta));
        }
        ProtocolScript script = build_wigner_script(theta);
        RunTrace trace = run_script(script, DynamicsModel::unitary_only(), rng);

        SweepRow row;
        row.theta = theta;
        const TraceRow* mid = trace.find_row("mid_snapshot");
        row.entropy_bob_bits = mid->entropy_bits[script.layout.position("bob")];
        row.purity_paper = 1.0;
        for (const TraceRow& r : trace.rows) row.purity_paper = std::min(row.purity_paper, r.record_purity);
        row.fidelity_final = fidelity(trace.final_state(), return_target(script));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wfsim
