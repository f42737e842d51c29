#include "wfsim/density.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace wfsim {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;

// Resolves the kept registers and precomputes the address arithmetic shared
// by both partial_trace overloads: flat offsets for every kept multi-index
// and an odometer over the traced-out axes.
struct TracePlan {
    RegisterLayout kept_layout;
    std::vector<std::size_t> keep_offsets;  // one per kept multi-index
    std::vector<std::size_t> rest_dims;
    std::vector<std::size_t> rest_strides;
    std::size_t n_rest = 1;
};

TracePlan plan_trace(const RegisterLayout& layout, const std::vector<std::string>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set must be non-empty");
    }
    std::vector<std::size_t> keep_pos;
    std::vector<Register> kept_regs;
    keep_pos.reserve(keep.size());
    for (const auto& name : keep) {
        const std::size_t pos = layout.position(name);  // throws on unknown name
        if (std::find(keep_pos.begin(), keep_pos.end(), pos) != keep_pos.end()) {
            throw std::invalid_argument(fmt::format("partial_trace: register '{}' listed twice", name));
        }
        keep_pos.push_back(pos);
        kept_regs.push_back(layout.subsystems()[pos]);
    }

    TracePlan plan{RegisterLayout(std::move(kept_regs)), {}, {}, {}, 1};
    const std::size_t kdim = plan.kept_layout.total_dim();
    plan.keep_offsets.assign(kdim, 0);
    for (std::size_t m = 0; m < kdim; ++m) {
        std::size_t rem = m;
        std::size_t off = 0;
        for (std::size_t j = keep_pos.size(); j-- > 0;) {
            const std::size_t d = layout.dim_at(keep_pos[j]);
            off += (rem % d) * layout.stride_at(keep_pos[j]);
            rem /= d;
        }
        plan.keep_offsets[m] = off;
    }
    for (std::size_t i = 0; i < layout.num_registers(); ++i) {
        if (std::find(keep_pos.begin(), keep_pos.end(), i) == keep_pos.end()) {
            plan.rest_dims.push_back(layout.dim_at(i));
            plan.rest_strides.push_back(layout.stride_at(i));
            plan.n_rest *= layout.dim_at(i);
        }
    }
    return plan;
}

// Walks all traced-out assignments, calling f(base_offset) for each.
template <typename F>
void for_each_rest(const TracePlan& plan, F&& f) {
    std::vector<std::size_t> odo(plan.rest_dims.size(), 0);
    std::size_t base = 0;
    for (std::size_t it = 0; it < plan.n_rest; ++it) {
        f(base);
        for (std::size_t ax = plan.rest_dims.size(); ax-- > 0;) {
            base += plan.rest_strides[ax];
            if (++odo[ax] < plan.rest_dims[ax]) break;
            base -= plan.rest_dims[ax] * plan.rest_strides[ax];
            odo[ax] = 0;
        }
    }
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw invariant_violation("eigensolve failed");
    }
    return solver.eigenvalues();
}

}  // namespace

DensityMatrix::DensityMatrix(RegisterLayout layout, Eigen::MatrixXcd matrix)
    : layout_(std::move(layout)), mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols() || static_cast<std::size_t>(mat_.rows()) != layout_.total_dim()) {
        throw std::invalid_argument(fmt::format("density matrix: shape {}x{} does not match layout dim {}",
                                                mat_.rows(), mat_.cols(), layout_.total_dim()));
    }
    const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw invariant_violation(fmt::format("density matrix: hermiticity defect {:.3e}", herm));
    }
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw invariant_violation(fmt::format("density matrix: trace {:.17g} deviates from 1", tr));
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    const auto& amps = state.amplitudes();
    const long n = static_cast<long>(amps.size());
    Eigen::MatrixXcd rho(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) rho(i, j) = amps[static_cast<std::size_t>(i)] * std::conj(amps[static_cast<std::size_t>(j)]);
    return DensityMatrix(state.layout(), std::move(rho));
}

DensityMatrix partial_trace(const PureState& state, const std::vector<std::string>& keep) {
    const TracePlan plan = plan_trace(state.layout(), keep);
    const std::size_t kdim = plan.kept_layout.total_dim();
    const auto& amps = state.amplitudes();

    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<long>(kdim), static_cast<long>(kdim));
    for_each_rest(plan, [&](std::size_t base) {
        for (std::size_t r = 0; r < kdim; ++r) {
            const cdouble ar = amps[base + plan.keep_offsets[r]];
            if (ar == cdouble(0.0, 0.0)) continue;
            for (std::size_t c = 0; c < kdim; ++c) {
                rho(static_cast<long>(r), static_cast<long>(c)) +=
                    ar * std::conj(amps[base + plan.keep_offsets[c]]);
            }
        }
    });
    return DensityMatrix(plan.kept_layout, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    const TracePlan plan = plan_trace(rho.layout(), keep);
    const std::size_t kdim = plan.kept_layout.total_dim();

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<long>(kdim), static_cast<long>(kdim));
    for_each_rest(plan, [&](std::size_t base) {
        for (std::size_t r = 0; r < kdim; ++r) {
            for (std::size_t c = 0; c < kdim; ++c) {
                out(static_cast<long>(r), static_cast<long>(c)) +=
                    rho.matrix()(static_cast<long>(base + plan.keep_offsets[r]),
                                 static_cast<long>(base + plan.keep_offsets[c]));
            }
        }
    });
    return DensityMatrix(plan.kept_layout, std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::VectorXd evals = hermitian_eigenvalues(rho.matrix());
    double entropy = 0.0;
    for (long i = 0; i < evals.size(); ++i) {
        double lambda = evals(i);
        if (lambda < -kPsdTol) {
            throw invariant_violation(fmt::format("entropy: eigenvalue {:.3e} below -1e-10", lambda));
        }
        if (lambda < tol::eig_floor) continue;  // 0 log 0 := 0
        entropy -= lambda * std::log2(lambda);
    }
    // Eigenvalues a hair above 1 can push the sum to -0; a pure state is 0 bits.
    return std::max(entropy, 0.0);
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
    return rho.matrix().squaredNorm();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.layout() != b.layout()) {
        throw std::invalid_argument("trace_distance: layouts do not match");
    }
    const Eigen::VectorXd evals = hermitian_eigenvalues(a.matrix() - b.matrix());
    return 0.5 * evals.cwiseAbs().sum();
}

}  // namespace wfsim
