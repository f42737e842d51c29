#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wfsim/layout.hpp"
#include "wfsim/state.hpp"

namespace wfsim {

/// Hermitian, unit-trace operator on a subset of registers. Hermiticity and
/// trace are validated on construction (1e-10); positivity is checked where
/// eigenvalues are computed.
class DensityMatrix {
  public:
    DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd matrix);

    /// |psi><psi| on the full layout.
    static DensityMatrix from_pure(const PureState& state);

    const RegisterLayout& layout() const { return layout_; }
    const Eigen::MatrixXcd& matrix() const { return mat_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

  private:
    RegisterLayout layout_;
    Eigen::MatrixXcd mat_;
};

/// Reduced operator on `keep` (order preserved as listed), tracing out the
/// rest. Never materializes the global outer product.
DensityMatrix partial_trace(const PureState& state, const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

/// -sum lambda log2 lambda in bits, with 0 log 0 := 0. Eigenvalues below
/// tol::eig_floor are clamped to zero; values below -1e-10 raise
/// invariant_violation.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// (1/2) ||a - b||_1 via the eigenvalues of the Hermitian difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace wfsim
