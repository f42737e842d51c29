#include "oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

using wfsim::cdouble;

std::vector<std::size_t> digits(std::size_t flat, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> out(dims.size(), 0);
    for (std::size_t k = dims.size(); k-- > 0;) {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    return out;
}

std::size_t flat_index(const std::vector<std::size_t>& digit_values, const std::vector<std::size_t>& dims) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digit_values[k];
    return flat;
}

namespace {

std::vector<std::size_t> layout_dims(const wfsim::RegisterLayout& layout) {
    std::vector<std::size_t> dims;
    for (const auto& reg : layout.subsystems()) dims.push_back(reg.dim);
    return dims;
}

std::vector<std::size_t> target_positions(const wfsim::RegisterLayout& layout, const wfsim::GateSpec& gate) {
    std::vector<std::size_t> positions;
    const auto& regs = layout.subsystems();
    for (const auto& target : gate.targets) {
        for (std::size_t p = 0; p < regs.size(); ++p) {
            if (regs[p].name == target) positions.push_back(p);
        }
    }
    if (positions.size() != gate.targets.size()) {
        throw std::runtime_error("oracle: gate target missing from layout");
    }
    return positions;
}

}  // namespace

Eigen::MatrixXcd full_gate_matrix(const wfsim::RegisterLayout& layout, const wfsim::GateSpec& gate) {
    const std::vector<std::size_t> dims = layout_dims(layout);
    const std::vector<std::size_t> targets = target_positions(layout, gate);
    std::vector<std::size_t> target_dims;
    for (std::size_t p : targets) target_dims.push_back(dims[p]);

    const std::size_t total = layout.total_dim();
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(total),
                                                   static_cast<Eigen::Index>(total));
    for (std::size_t row = 0; row < total; ++row) {
        const std::vector<std::size_t> row_digits = digits(row, dims);
        for (std::size_t col = 0; col < total; ++col) {
            const std::vector<std::size_t> col_digits = digits(col, dims);

            bool rest_match = true;
            for (std::size_t p = 0; p < dims.size() && rest_match; ++p) {
                bool is_target = false;
                for (std::size_t t : targets) is_target = is_target || t == p;
                if (!is_target && row_digits[p] != col_digits[p]) rest_match = false;
            }
            if (!rest_match) continue;

            std::vector<std::size_t> gate_row, gate_col;
            for (std::size_t t : targets) {
                gate_row.push_back(row_digits[t]);
                gate_col.push_back(col_digits[t]);
            }
            full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                gate.matrix(static_cast<Eigen::Index>(flat_index(gate_row, target_dims)),
                            static_cast<Eigen::Index>(flat_index(gate_col, target_dims)));
        }
    }
    return full;
}

wfsim::PureState apply_full_matrix(const wfsim::PureState& state, const Eigen::MatrixXcd& matrix) {
    const auto n = static_cast<Eigen::Index>(state.dim());
    Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), n);
    Eigen::VectorXcd out = matrix * psi;
    return wfsim::PureState(state.layout(), std::vector<cdouble>(out.data(), out.data() + n));
}

Eigen::MatrixXcd brute_partial_trace(const wfsim::PureState& state, const std::vector<std::string>& keep) {
    const auto& layout = state.layout();
    const std::vector<std::size_t> dims = layout_dims(layout);
    const auto& regs = layout.subsystems();

    std::vector<std::size_t> keep_positions;
    std::vector<std::size_t> keep_dims;
    for (const auto& name : keep) {
        for (std::size_t p = 0; p < regs.size(); ++p) {
            if (regs[p].name == name) {
                keep_positions.push_back(p);
                keep_dims.push_back(dims[p]);
            }
        }
    }
    if (keep_positions.size() != keep.size()) {
        throw std::runtime_error("oracle: kept register missing from layout");
    }

    std::size_t kept_total = 1;
    for (std::size_t d : keep_dims) kept_total *= d;

    const std::size_t total = layout.total_dim();
    const auto& amps = state.amplitudes();
    Eigen::MatrixXcd rho_full(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < total; ++j) {
            rho_full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                amps[i] * std::conj(amps[j]);
        }
    }

    Eigen::MatrixXcd reduced = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kept_total),
                                                      static_cast<Eigen::Index>(kept_total));
    for (std::size_t i = 0; i < total; ++i) {
        const std::vector<std::size_t> di = digits(i, dims);
        for (std::size_t j = 0; j < total; ++j) {
            const std::vector<std::size_t> dj = digits(j, dims);

            bool traced_match = true;
            for (std::size_t p = 0; p < dims.size() && traced_match; ++p) {
                bool kept = false;
                for (std::size_t kp : keep_positions) kept = kept || kp == p;
                if (!kept && di[p] != dj[p]) traced_match = false;
            }
            if (!traced_match) continue;

            std::vector<std::size_t> ri, rj;
            for (std::size_t kp : keep_positions) {
                ri.push_back(di[kp]);
                rj.push_back(dj[kp]);
            }
            reduced(static_cast<Eigen::Index>(flat_index(ri, keep_dims)),
                    static_cast<Eigen::Index>(flat_index(rj, keep_dims))) +=
                rho_full(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return reduced;
}

double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

Eigen::MatrixXcd random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) g(r, c) = cdouble(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

wfsim::PureState random_state(const wfsim::RegisterLayout& layout, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> amps(layout.total_dim());
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = cdouble(gauss(rng), gauss(rng));
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= scale;
    return wfsim::PureState(layout, std::move(amps));
}

}  // namespace oracle
