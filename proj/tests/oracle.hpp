// Reference implementations used only by the tests. Everything here takes
// the slow, obviously-correct route (full matrices, explicit outer products,
// its own index arithmetic) so that agreement with the optimized kernel is
// evidence rather than tautology.
#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "wfsim/gates.hpp"
#include "wfsim/layout.hpp"
#include "wfsim/state.hpp"

namespace oracle {

/// Row-major digit decomposition (first register varies slowest), computed
/// from the dims alone.
std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t>& dims);
std::size_t flat_index(const std::vector<std::size_t>& digit_values, const std::vector<std::size_t>& dims);

/// The gate blown up to a full total_dim x total_dim matrix.
Eigen::MatrixXcd full_gate_matrix(const wfsim::RegisterLayout& layout, const wfsim::GateSpec& gate);

/// Dense matrix-vector product, the reference for apply_gate.
wfsim::PureState apply_full_matrix(const wfsim::PureState& state, const Eigen::MatrixXcd& matrix);

/// Partial trace done the blunt way: materialize |psi><psi| and sum over
/// the traced digits. Kept indices follow the order of `keep`.
Eigen::MatrixXcd brute_partial_trace(const wfsim::PureState& state, const std::vector<std::string>& keep);

double binary_entropy(double p);

/// Haar-ish random unitary via QR of a Gaussian complex matrix.
Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng);

wfsim::PureState random_state(const wfsim::RegisterLayout& layout, std::mt19937_64& rng);

}  // namespace oracle
