#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "wfsim/analysis.hpp"
#include "wfsim/protocol.hpp"

using namespace wfsim;

namespace {

constexpr double kPi = std::numbers::pi;

PureState mid_state(double theta, bool which_query = false) {
    WignerOptions options{theta};
    options.which_query = which_query;
    ProtocolScript script = build_wigner_script(options);
    std::mt19937_64 rng(0);
    return run_script(script, DynamicsModel::unitary_only(), rng).snapshots.at("mid_snapshot");
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("branch decomposition: weights, conditional states, omissions") {
    SUBCASE("two equal branches at theta = pi/2") {
        PureState mid = mid_state(kPi / 2);
        BranchDecomposition decomp = branch_decomposition(mid, "bob");
        REQUIRE(decomp.branches.size() == 2);
        CHECK(decomp.pointer_subsystem == "bob");
        CHECK(decomp.branches[0].outcome == 0);
        CHECK(decomp.branches[0].weight == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(decomp.branches[1].weight == doctest::Approx(0.5).epsilon(1e-10));

        // conditional states are the two product summands (paper = 1 in both)
        const auto& layout = mid.layout();
        PureState alive = make_basis_state(
            layout, {{"atom", 0}, {"poison", 0}, {"cat", 0}, {"bob", 0}, {"paper", 1}});
        PureState dead = make_basis_state(
            layout, {{"atom", 1}, {"poison", 1}, {"cat", 1}, {"bob", 1}, {"paper", 1}});
        CHECK(fidelity(decomp.branches[0].conditional_state, alive) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fidelity(decomp.branches[1].conditional_state, dead) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("weights follow sin^2 at theta = pi/3") {
        BranchDecomposition decomp = branch_decomposition(mid_state(kPi / 3), "bob");
        REQUIRE(decomp.branches.size() == 2);
        CHECK(decomp.branches[0].weight == doctest::Approx(0.75).epsilon(1e-10));
        CHECK(decomp.branches[1].weight == doctest::Approx(0.25).epsilon(1e-10));
    }

    SUBCASE("product states have a single branch") {
        RegisterLayout layout = RegisterLayout::qubits({"x", "y"});
        PureState basis = make_basis_state(layout, {{"x", 1}, {"y", 0}});
        BranchDecomposition decomp = branch_decomposition(basis, "x");
        REQUIRE(decomp.branches.size() == 1);
        CHECK(decomp.branches[0].outcome == 1);
        CHECK(decomp.branches[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("weights sum to one on random states") {
        std::mt19937_64 rng(55);
        RegisterLayout layout({{"x", 3}, {"y", 2}, {"z", 2}});
        for (int rep = 0; rep < 10; ++rep) {
            PureState psi = oracle::random_state(layout, rng);
            for (const auto& reg : layout.subsystems()) {
                double total = 0.0;
                for (const Branch& b : branch_decomposition(psi, reg.name).branches) {
                    total += b.weight;
                    CHECK(b.conditional_state.norm() == doctest::Approx(1.0).epsilon(1e-10));
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }

    SUBCASE("unknown pointer throws") {
        CHECK_THROWS_AS(branch_decomposition(mid_state(1.0), "ghost"), std::invalid_argument);
    }
}

TEST_CASE("dephased reconstruction: sum of weighted branch projectors") {
    std::mt19937_64 rng(66);
    RegisterLayout layout = RegisterLayout::qubits({"x", "y", "z"});
    for (int rep = 0; rep < 10; ++rep) {
        PureState psi = oracle::random_state(layout, rng);
        DensityMatrix dephased = pointer_dephased(psi, "y");

        // reference: start from the explicit outer product and erase the
        // pointer-off-diagonal blocks
        Eigen::MatrixXcd rho = oracle::brute_partial_trace(psi, {"x", "y", "z"});
        const std::size_t pos = layout.position("y");
        for (std::size_t i = 0; i < layout.total_dim(); ++i) {
            for (std::size_t j = 0; j < layout.total_dim(); ++j) {
                if (layout.digit_at(i, pos) != layout.digit_at(j, pos)) {
                    rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0;
                }
            }
        }
        CHECK((dephased.matrix() - rho).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("local indistinguishability: entangled vs dephased is locally invisible") {
    for (double theta : {kPi / 6, kPi / 4, kPi / 3, kPi / 2, 2.3}) {
        PureState mid = mid_state(theta);
        DensityMatrix dephased = pointer_dephased(mid, "bob");
        for (const auto& reg : mid.layout().subsystems()) {
            CHECK(local_indistinguishability(mid, dephased, reg.name) <= 1e-10);
        }
    }
}

TEST_CASE("local indistinguishability: entangled vs single branch is visible") {
    PureState mid = mid_state(kPi / 2);
    PureState alive = branch_decomposition(mid, "bob").branches[0].conditional_state;
    // diag(1/2, 1/2) vs |0><0| on bob: trace distance 1/2
    CHECK(local_indistinguishability(mid, alive, "bob") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(local_indistinguishability(mid, mid, "bob") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("local indistinguishability rejects mismatched layouts") {
    PureState wigner = mid_state(1.0);
    RegisterLayout other = RegisterLayout::qubits({"a", "b"});
    PureState small = make_basis_state(other, {{"a", 0}, {"b", 0}});
    CHECK_THROWS_AS(local_indistinguishability(wigner, small, "bob"), std::invalid_argument);
}

TEST_CASE("coherence witness separates global from local superposition") {
    SUBCASE("entangled mid-protocol state: global 1/2, reduced 0") {
        CoherenceWitness witness = coherence_witness(mid_state(kPi / 2), "bob");
        CHECK(witness.global_offdiag == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(witness.reduced_offdiag <= 1e-10);
    }

    SUBCASE("product superposition: genuine local coherence 1/2") {
        RegisterLayout layout = RegisterLayout::qubits({"q", "rest"});
        PureState plus = apply_gate(make_basis_state(layout, {{"q", 0}, {"rest", 0}}), hadamard("q"));
        CoherenceWitness witness = coherence_witness(plus, "q");
        CHECK(witness.global_offdiag == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(witness.reduced_offdiag == doctest::Approx(0.5).epsilon(1e-10));
    }

    SUBCASE("basis states carry no coherence at all") {
        RegisterLayout layout = RegisterLayout::qubits({"q", "rest"});
        PureState basis = make_basis_state(layout, {{"q", 1}, {"rest", 0}});
        CoherenceWitness witness = coherence_witness(basis, "q");
        CHECK(witness.global_offdiag == 0.0);
        CHECK(witness.reduced_offdiag == 0.0);
    }

    SUBCASE("global value equals the product of branch amplitude magnitudes") {
        std::mt19937_64 rng(77);
        RegisterLayout layout = RegisterLayout::qubits({"p", "q", "r"});
        for (int rep = 0; rep < 10; ++rep) {
            PureState psi = oracle::random_state(layout, rng);
            BranchDecomposition decomp = branch_decomposition(psi, "q");
            REQUIRE(decomp.branches.size() == 2);
            const double expected =
                std::sqrt(decomp.branches[0].weight) * std::sqrt(decomp.branches[1].weight);
            CHECK(coherence_witness(psi, "q").global_offdiag == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("entropy sweep: analytic column, endpoints, monotonicity") {
    std::vector<double> grid;
    for (int i = 1; i <= 40; ++i) grid.push_back(kPi * i / 41.0);
    std::vector<SweepRow> rows = entropy_sweep(grid);
    REQUIRE(rows.size() == grid.size());

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double p = std::pow(std::sin(grid[i] / 2), 2);
        CHECK(std::abs(rows[i].entropy_bob_bits - oracle::binary_entropy(p)) <= 1e-9);
        CHECK(rows[i].purity_paper == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rows[i].fidelity_final == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(rows[i].theta == grid[i]);
    }

    // entropy rises monotonically up to pi/2
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (grid[i] <= kPi / 2) CHECK(rows[i].entropy_bob_bits > rows[i - 1].entropy_bob_bits);
    }

    // near-zero angle: essentially no entanglement
    std::vector<SweepRow> tiny = entropy_sweep({1e-3});
    CHECK(tiny[0].entropy_bob_bits ==
          doctest::Approx(oracle::binary_entropy(std::pow(std::sin(5e-4), 2))).epsilon(1e-9));
    CHECK(tiny[0].entropy_bob_bits < 1e-4);

    CHECK_THROWS_AS(entropy_sweep({0.0}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_sweep({kPi}), std::invalid_argument);
    CHECK_THROWS_AS(entropy_sweep({-1.0}), std::invalid_argument);
}

TEST_CASE("pi/2 sweep row is exactly the one-bit point") {
    std::vector<SweepRow> rows = entropy_sweep({kPi / 2});
    CHECK(std::abs(rows[0].entropy_bob_bits - 1.0) <= 1e-9);
}

}  // TEST_SUITE
