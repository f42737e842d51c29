#include "wfsim/state.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wfsim/rng.hpp"

namespace wfsim {

namespace {

double norm_sq(const std::vector<cdouble>& amps) {
    double acc = 0.0;
    for (const auto& a : amps) acc += std::norm(a);
    return acc;
}

}  // namespace

PureState::PureState(RegisterLayout layout, std::vector<cdouble> amplitudes)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
    if (amps_.size() != layout_.total_dim()) {
        throw std::invalid_argument(fmt::format("state: amplitude count {} does not match layout dim {}",
                                                amps_.size(), layout_.total_dim()));
    }
    const double n2 = norm_sq(amps_);
    if (std::abs(n2 - 1.0) > tol::norm) {
        throw invariant_violation(fmt::format("state: squared norm {:.17g} deviates from 1", n2));
    }
}

double PureState::norm() const { return std::sqrt(norm_sq(amps_)); }

PureState make_basis_state(const RegisterLayout& layout, const std::map<std::string, std::size_t>& values) {
    std::vector<std::size_t> digits(layout.num_registers(), 0);
    std::vector<bool> assigned(layout.num_registers(), false);
    for (const auto& [name, value] : values) {
        const std::size_t pos = layout.position(name);  // throws on unknown name
        if (value >= layout.dim_at(pos)) {
            throw std::invalid_argument(fmt::format("basis state: value {} out of range for register '{}' (dim {})",
                                                    value, name, layout.dim_at(pos)));
        }
        digits[pos] = value;
        assigned[pos] = true;
    }
    for (std::size_t i = 0; i < layout.num_registers(); ++i) {
        if (!assigned[i]) {
            throw std::invalid_argument(
                fmt::format("basis state: register '{}' not assigned a value", layout.name_at(i)));
        }
    }
    std::vector<cdouble> amps(layout.total_dim(), cdouble(0.0, 0.0));
    amps[layout.flat_index(digits)] = cdouble(1.0, 0.0);
    return PureState(layout, std::move(amps));
}

// Applies the gate in place over each block of amplitudes that share the
// non-target digits. Blocks are enumerated with an odometer over the
// non-target axes so the per-block cost is O(gdim^2) with no index
// decomposition in the inner loop.
PureState apply_gate(const PureState& state, const GateSpec& gate) {
    const RegisterLayout& layout = state.layout();

    std::vector<std::size_t> target_pos;
    target_pos.reserve(gate.targets.size());
    std::size_t gdim = 1;
    for (const auto& name : gate.targets) {
        const std::size_t pos = layout.position(name);  // throws on unknown target
        target_pos.push_back(pos);
        gdim *= layout.dim_at(pos);
    }
    if (gdim != gate.dim()) {
        throw std::invalid_argument(fmt::format("gate '{}': matrix dim {} does not match target dims product {}",
                                                gate.name, gate.dim(), gdim));
    }

    // Flat offsets of the gate's row-major multi-index within the global index.
    std::vector<std::size_t> offsets(gdim, 0);
    for (std::size_t m = 0; m < gdim; ++m) {
        std::size_t rem = m;
        std::size_t off = 0;
        for (std::size_t j = target_pos.size(); j-- > 0;) {
            const std::size_t d = layout.dim_at(target_pos[j]);
            off += (rem % d) * layout.stride_at(target_pos[j]);
            rem /= d;
        }
        offsets[m] = off;
    }

    std::vector<std::size_t> rest_dims;
    std::vector<std::size_t> rest_strides;
    for (std::size_t i = 0; i < layout.num_registers(); ++i) {
        if (std::find(target_pos.begin(), target_pos.end(), i) == target_pos.end()) {
            rest_dims.push_back(layout.dim_at(i));
            rest_strides.push_back(layout.stride_at(i));
        }
    }
    const std::size_t n_blocks = layout.total_dim() / gdim;

    std::vector<cdouble> g(gdim * gdim);
    for (std::size_t r = 0; r < gdim; ++r)
        for (std::size_t c = 0; c < gdim; ++c) g[r * gdim + c] = gate.matrix(static_cast<long>(r), static_cast<long>(c));

    std::vector<cdouble> out = state.amplitudes();
    std::vector<std::size_t> odo(rest_dims.size(), 0);
    std::size_t base = 0;

    const auto advance = [&]() {
        for (std::size_t ax = rest_dims.size(); ax-- > 0;) {
            base += rest_strides[ax];
            if (++odo[ax] < rest_dims[ax]) return;
            base -= rest_dims[ax] * rest_strides[ax];
            odo[ax] = 0;
        }
    };

    if (gdim == 2) {
        const cdouble g00 = g[0], g01 = g[1], g10 = g[2], g11 = g[3];
        const std::size_t off1 = offsets[1];
        for (std::size_t blk = 0; blk < n_blocks; ++blk) {
            cdouble& a = out[base];
            cdouble& b = out[base + off1];
            const cdouble a0 = a, b0 = b;
            a = g00 * a0 + g01 * b0;
            b = g10 * a0 + g11 * b0;
            advance();
        }
    } else {
        std::vector<cdouble> scratch(gdim);
        for (std::size_t blk = 0; blk < n_blocks; ++blk) {
            for (std::size_t m = 0; m < gdim; ++m) scratch[m] = out[base + offsets[m]];
            for (std::size_t r = 0; r < gdim; ++r) {
                cdouble acc(0.0, 0.0);
                const cdouble* row = g.data() + r * gdim;
                for (std::size_t c = 0; c < gdim; ++c) acc += row[c] * scratch[c];
                out[base + offsets[r]] = acc;
            }
            advance();
        }
    }
    return PureState(layout, std::move(out));
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.layout() != b.layout()) {
        throw std::invalid_argument("fidelity: layouts do not match");
    }
    cdouble overlap(0.0, 0.0);
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) overlap += std::conj(av[i]) * bv[i];
    return std::norm(overlap);
}

double expectation_projector(const PureState& state, const PureState& target) {
    return fidelity(target, state);
}

double marginal_probability(const PureState& state, std::string_view subsystem, std::size_t value) {
    const RegisterLayout& layout = state.layout();
    const std::size_t pos = layout.position(subsystem);
    if (value >= layout.dim_at(pos)) {
        throw std::invalid_argument(fmt::format("marginal: value {} out of range for register '{}'", value,
                                                subsystem));
    }
    double acc = 0.0;
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (layout.digit_at(i, pos) == value) acc += std::norm(amps[i]);
    }
    return acc;
}

MeasurementResult measure(const PureState& state, std::string_view subsystem, std::mt19937_64& rng) {
    const RegisterLayout& layout = state.layout();
    const std::size_t pos = layout.position(subsystem);
    const std::size_t d = layout.dim_at(pos);
    const auto& amps = state.amplitudes();

    std::vector<double> probs(d, 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) probs[layout.digit_at(i, pos)] += std::norm(amps[i]);

    // Walk the cumulative distribution; outcomes with zero probability can
    // never be selected.
    const double u = uniform01(rng);
    std::size_t outcome = 0;
    bool found = false;
    double cum = 0.0;
    for (std::size_t v = 0; v < d; ++v) {
        cum += probs[v];
        if (probs[v] > 0.0) {
            outcome = v;
            if (u < cum) {
                found = true;
                break;
            }
        }
    }
    if (!found && probs[outcome] <= 0.0) {
        throw invariant_violation("measure: no outcome with positive probability");
    }

    const double p = probs[outcome];
    const double inv = 1.0 / std::sqrt(p);
    std::vector<cdouble> post(amps.size(), cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (layout.digit_at(i, pos) == outcome) post[i] = amps[i] * inv;
    }
    return MeasurementResult{outcome, p, PureState(layout, std::move(post))};
}

std::vector<std::size_t> sample_readout(const PureState& state, std::mt19937_64& rng) {
    const auto& amps = state.amplitudes();
    const double u = uniform01(rng);
    double cum = 0.0;
    std::size_t picked = 0;
    bool found = false;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        cum += p;
        if (p > 0.0) {
            picked = i;
            if (u < cum) {
                found = true;
                break;
            }
        }
    }
    if (!found && std::norm(amps[picked]) <= 0.0) {
        throw invariant_violation("readout: no outcome with positive probability");
    }
    return state.layout().digits(picked);
}

std::size_t count_branches(const PureState& state, double threshold) {
    std::size_t n = 0;
    for (const auto& a : state.amplitudes()) {
        if (std::abs(a) > threshold) ++n;
    }
    return n;
}

}  // namespace wfsim
