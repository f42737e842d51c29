#include "wfsim/gates.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace wfsim {

namespace {
constexpr double kUnitaryTol = 1e-10;
}

GateSpec::GateSpec(std::string name_, std::vector<std::string> targets_, Eigen::MatrixXcd matrix_)
    : name(std::move(name_)), targets(std::move(targets_)), matrix(std::move(matrix_)) {
    if (targets.empty()) {
        throw std::invalid_argument(fmt::format("gate '{}': needs at least one target", name));
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& t : targets) {
        if (!seen.insert(t).second) {
            throw std::invalid_argument(fmt::format("gate '{}': duplicate target '{}'", name, t));
        }
    }
    if (matrix.rows() != matrix.cols() || matrix.rows() < 2) {
        throw std::invalid_argument(fmt::format("gate '{}': matrix must be square, dim >= 2", name));
    }
    const Eigen::MatrixXcd defect =
        matrix * matrix.adjoint() - Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
    if (defect.norm() > kUnitaryTol) {
        throw std::invalid_argument(
            fmt::format("gate '{}': matrix is not unitary (defect {:.3e})", name, defect.norm()));
    }
}

GateSpec adjoint(const GateSpec& gate) {
    return GateSpec(gate.name + "_dag", gate.targets, gate.matrix.adjoint());
}

GateSpec identity_gate(const std::string& target, std::size_t dim) {
    return GateSpec("I", {target}, Eigen::MatrixXcd::Identity(static_cast<long>(dim), static_cast<long>(dim)));
}

GateSpec pauli_x(const std::string& target) {
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1, 1, 0;
    return GateSpec("X", {target}, m);
}

GateSpec hadamard(const std::string& target) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m(2, 2);
    m << s, s, s, -s;
    return GateSpec("H", {target}, m);
}

GateSpec ry(double theta, const std::string& target) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Eigen::MatrixXcd m(2, 2);
    m << c, -s, s, c;
    return GateSpec(fmt::format("Ry({:.12g})", theta), {target}, m);
}

GateSpec cnot(const std::string& control, const std::string& target) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return GateSpec("CNOT", {control, target}, m);
}

}  // namespace wfsim
