#pragma once

#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfsim/gates.hpp"
#include "wfsim/layout.hpp"

namespace wfsim {

using cdouble = std::complex<double>;

/// Numeric tolerances used across the library.
namespace tol {
inline constexpr double norm = 1e-10;       // norms, unitarity, fidelity
inline constexpr double entropy = 1e-9;     // entropy values (eigensolve noise)
inline constexpr double eig_floor = 1e-12;  // eigenvalues clamped to 0 below this
}  // namespace tol

/// Raised when a numeric invariant (norm, positivity, hermiticity) is
/// violated beyond tolerance. The CLI maps this to exit code 3.
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Normalized amplitude vector over a composite space. Value-semantic and
/// immutable after construction; operations return new states.
class PureState {
  public:
    /// Validates squared norm = 1 within tol::norm.
    PureState(RegisterLayout layout, std::vector<cdouble> amplitudes);

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<cdouble>& amplitudes() const { return amps_; }
    std::size_t dim() const { return amps_.size(); }
    double norm() const;

  private:
    RegisterLayout layout_;
    std::vector<cdouble> amps_;
};

/// Computational basis state with the given register values.
PureState make_basis_state(const RegisterLayout& layout, const std::map<std::string, std::size_t>& values);

/// Applies (gate (x) identity on the rest) with the index permutation implied
/// by the layout. Norm is preserved by unitarity.
PureState apply_gate(const PureState& state, const GateSpec& gate);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Expectation of the projector |target><target| in `state`; the
/// non-collapsing global verification statistic. Identical value to
/// fidelity(state, target) but computed against an observer-chosen target.
double expectation_projector(const PureState& state, const PureState& target);

/// Born probability of finding `subsystem` with the given basis value.
double marginal_probability(const PureState& state, std::string_view subsystem, std::size_t value);

struct MeasurementResult {
    std::size_t outcome;
    double prob;
    PureState post_state;
};

/// Projective measurement of one subsystem in the computational basis.
/// The outcome is sampled with Born probabilities; zero-probability
/// outcomes are never selected. post_state is the renormalized projection.
MeasurementResult measure(const PureState& state, std::string_view subsystem, std::mt19937_64& rng);

/// One joint computational-basis readout of every register (one draw).
std::vector<std::size_t> sample_readout(const PureState& state, std::mt19937_64& rng);

/// Number of computational basis amplitudes with |amp| > threshold.
std::size_t count_branches(const PureState& state, double threshold = 1e-12);

}  // namespace wfsim
