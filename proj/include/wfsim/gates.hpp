#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace wfsim {

/// A unitary acting on an ordered list of named target registers.
/// The matrix is indexed row-major over the targets in declared order;
/// its dimension must equal the product of the target dims.
///
/// Rotation convention used throughout the project:
///   ry(theta) = [[cos(theta/2), -sin(theta/2)],
///                [sin(theta/2),  cos(theta/2)]]
struct GateSpec {
    std::string name;
    std::vector<std::string> targets;
    Eigen::MatrixXcd matrix;

    /// Validates that the matrix is square and unitary (Frobenius 1e-10)
    /// and that targets are distinct.
    GateSpec(std::string name_, std::vector<std::string> targets_, Eigen::MatrixXcd matrix_);

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Conjugate transpose, acting on the same targets.
GateSpec adjoint(const GateSpec& gate);

GateSpec identity_gate(const std::string& target, std::size_t dim = 2);
GateSpec pauli_x(const std::string& target);
GateSpec hadamard(const std::string& target);
GateSpec ry(double theta, const std::string& target);
GateSpec cnot(const std::string& control, const std::string& target);

}  // namespace wfsim
