#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "finstate/algebra.hpp"
#include "finstate/random.hpp"

using namespace finstate;

namespace {

State uniform_classical(int n) {
    return classical_state_from_probs(std::vector<double>(n, 1.0 / n));
}

State maximally_mixed_qubit() {
    std::vector<Matrix> ops;
    ops.push_back(0.5 * Matrix::Identity(2, 2));
    return State(System({2}), std::move(ops));
}

} // namespace

TEST_CASE("make_classical_system") {
    CHECK(make_classical_system(1) == System({1}));
    CHECK(make_classical_system(2) == System({1, 1}));
    CHECK(make_classical_system(5).total_dim() == 5);
    CHECK(make_classical_system(5).num_blocks() == 5);
    CHECK(make_classical_system(2).is_classical());
    CHECK_THROWS_AS(make_classical_system(0), InvalidArgumentError);
}

TEST_CASE("System validation") {
    CHECK_THROWS_AS(System({}), InvalidArgumentError);
    CHECK_THROWS_AS(System({2, 0}), InvalidArgumentError);
    CHECK_FALSE(System({2}).is_classical());
    CHECK(System({2, 1, 3}).total_dim() == 6);
}

TEST_CASE("classical_state_from_probs") {
    const State one = classical_state_from_probs({1.0});
    CHECK(one.system() == System({1}));
    CHECK(one.block_op(0)(0, 0).real() == 1.0);

    const State half = classical_state_from_probs({0.5, 0.5});
    CHECK(half.block_trace(0) == 0.5);

    const State p = classical_state_from_probs({0.3, 0.7});
    CHECK(p.block_trace(0) == doctest::Approx(0.3));
    CHECK(p.block_trace(1) == doctest::Approx(0.7));

    CHECK_THROWS_AS(classical_state_from_probs({-0.1, 1.1}), InvalidStateError);
    CHECK_THROWS_AS(classical_state_from_probs({0.4, 0.4}), InvalidStateError);
    CHECK_THROWS_AS(classical_state_from_probs({}), InvalidStateError);
}

TEST_CASE("state_as_prob_vector round trip") {
    const std::vector<double> probs = {0.3, 0.7};
    CHECK(state_as_prob_vector(classical_state_from_probs(probs)) == probs);
    CHECK(state_as_prob_vector(classical_state_from_probs({1.0})) == std::vector<double>{1.0});
    CHECK_THROWS_AS(state_as_prob_vector(maximally_mixed_qubit()), DomainMismatchError);
}

TEST_CASE("State validation rejects bad blocks") {
    const System qubit({2});
    Matrix not_hermitian(2, 2);
    not_hermitian << Complex(0.5, 0.0), Complex(0.3, 0.0), Complex(-0.3, 0.0), Complex(0.5, 0.0);
    CHECK_THROWS_AS(State(qubit, {not_hermitian}), InvalidStateError);

    Matrix not_psd(2, 2);
    not_psd << Complex(1.2, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-0.2, 0.0);
    CHECK_THROWS_AS(State(qubit, {not_psd}), InvalidStateError);

    CHECK_THROWS_AS(State(qubit, {0.45 * Matrix::Identity(2, 2)}), InvalidStateError);
    CHECK_THROWS_AS(State(qubit, {Matrix::Identity(3, 3) / 3.0}), InvalidStateError);
    CHECK_THROWS_AS(State(System({1, 1}), {Matrix::Identity(1, 1)}), InvalidStateError);
}

TEST_CASE("is_pure") {
    const System two = make_classical_system(2);
    CHECK(is_pure(classical_point_mass(two, 0).to_state()));
    CHECK_FALSE(is_pure(classical_state_from_probs({0.5, 0.5})));
    // Tr((I/2)^2) = 1/2 for the maximally mixed qubit.
    CHECK_FALSE(is_pure(maximally_mixed_qubit()));

    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const System a = random_system(rng, 3, 4);
        const int block = rng.uniform_int(0, a.num_blocks() - 1);
        const PureState psi(a, block, haar_state_vector(rng, a.block_dim(block)));
        CHECK(is_pure(psi.to_state()));
    }
}

TEST_CASE("PureState validation") {
    Vector unnormalized(2);
    unnormalized << Complex(1.0, 0.0), Complex(1.0, 0.0);
    CHECK_THROWS_AS(PureState(System({2}), 0, unnormalized), InvalidArgumentError);
    CHECK_THROWS_AS(PureState(System({2}), 1, Vector::Ones(1)), InvalidArgumentError);
}

TEST_CASE("direct_sum_systems") {
    CHECK(direct_sum_systems(System({1, 1}), System({1})) == System({1, 1, 1}));
    CHECK(direct_sum_systems(System({2}), System({1, 3})) == System({2, 1, 3}));
    const System a({3, 2});
    CHECK(direct_sum_systems(a, System({1})).total_dim() == a.total_dim() + 1);
}

TEST_CASE("direct_sum_states") {
    const State omega = uniform_classical(2);
    const State xi = uniform_classical(2);

    SUBCASE("lambda 0 zeroes the first summand") {
        const State sum = direct_sum_states(0.0, omega, xi);
        CHECK(sum.block_trace(0) == 0.0);
        CHECK(sum.block_trace(1) == 0.0);
        CHECK(sum.block_trace(2) == doctest::Approx(0.5));
        CHECK_FALSE(is_pure(sum));
    }

    SUBCASE("two copies of the point state mix to a coin flip") {
        const State one = classical_state_from_probs({1.0});
        const State sum = direct_sum_states(0.5, one, one);
        CHECK(state_as_prob_vector(sum) == std::vector<double>{0.5, 0.5});
    }

    SUBCASE("componentwise scaling") {
        // Oracle: entries are lambda (resp. 1 - lambda) times the inputs.
        const State sum = direct_sum_states(0.3, omega, xi);
        const std::vector<double> expected = {0.3 * 0.5, 0.3 * 0.5, 0.7 * 0.5, 0.7 * 0.5};
        const std::vector<double> actual = state_as_prob_vector(sum);
        REQUIRE(actual.size() == expected.size());
        for (size_t i = 0; i < expected.size(); ++i)
            CHECK(std::abs(actual[i] - expected[i]) <= 1e-15);
        CHECK_FALSE(is_pure(sum));
    }

    SUBCASE("lambda outside the interval") {
        CHECK_THROWS_AS(direct_sum_states(1.2, omega, xi), InvalidArgumentError);
        CHECK_THROWS_AS(direct_sum_states(-0.1, omega, xi), InvalidArgumentError);
    }
}

TEST_CASE("embed_state_full") {
    SUBCASE("classical diag") {
        const Matrix full = embed_state_full(classical_state_from_probs({0.3, 0.7}));
        Matrix expected = Matrix::Zero(2, 2);
        expected(0, 0) = 0.3;
        expected(1, 1) = 0.7;
        CHECK((full - expected).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("two blocks assemble along the diagonal") {
        std::vector<Matrix> ops;
        ops.push_back(0.5 * Matrix::Identity(1, 1));
        ops.push_back(0.25 * Matrix::Identity(2, 2));
        const State state(System({1, 2}), std::move(ops));
        const Matrix full = embed_state_full(state);
        // Oracle: direct assembly.
        Matrix expected = Matrix::Zero(3, 3);
        expected(0, 0) = 0.5;
        expected(1, 1) = 0.25;
        expected(2, 2) = 0.25;
        CHECK((full - expected).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("pure states embed to rank one") {
        Rng rng(11);
        const System a({2, 3});
        const PureState psi(a, 1, haar_state_vector(rng, 3));
        Eigen::SelfAdjointEigenSolver<Matrix> solver(embed_state_full(psi.to_state()));
        const auto& eigenvalues = solver.eigenvalues();
        CHECK(eigenvalues(eigenvalues.size() - 1) == doctest::Approx(1.0));
        CHECK(std::abs(eigenvalues(eigenvalues.size() - 2)) <= 1e-12);
    }

    SUBCASE("direct sums embed blockwise") {
        Rng rng(13);
        for (int i = 0; i < 25; ++i) {
            const State omega = random_state(rng, random_system(rng, 3, 3));
            const State xi = random_state(rng, random_system(rng, 3, 3));
            const double lambda = rng.uniform();
            const Matrix full = embed_state_full(direct_sum_states(lambda, omega, xi));
            const int na = omega.system().total_dim();
            const int nb = xi.system().total_dim();
            Matrix expected = Matrix::Zero(na + nb, na + nb);
            expected.topLeftCorner(na, na) = lambda * embed_state_full(omega);
            expected.bottomRightCorner(nb, nb) = (1.0 - lambda) * embed_state_full(xi);
            CHECK((full - expected).cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("spectral_decompose") {
    SUBCASE("maximally mixed qubit") {
        const SpectralDecomposition sd = spectral_decompose(maximally_mixed_qubit());
        REQUIRE(sd.gammas.size() == 2);
        CHECK(sd.gammas[0] == doctest::Approx(0.5));
        CHECK(sd.gammas[1] == doctest::Approx(0.5));
        CHECK(std::abs(sd.psis[0].vector().dot(sd.psis[1].vector())) <= 1e-9);
    }

    SUBCASE("classical states are already diagonal") {
        const SpectralDecomposition sd = spectral_decompose(classical_state_from_probs({0.3, 0.7}));
        // Descending order: the 0.7 mass (block 1) comes first.
        REQUIRE(sd.gammas.size() == 2);
        CHECK(sd.gammas[0] == doctest::Approx(0.7));
        CHECK(sd.gammas[1] == doctest::Approx(0.3));
        CHECK(sd.psis[0].block_index() == 1);
        CHECK(sd.psis[1].block_index() == 0);
    }

    SUBCASE("zero eigenvalues are kept") {
        Rng rng(3);
        const PureState psi(System({3}), 0, haar_state_vector(rng, 3));
        const SpectralDecomposition sd = spectral_decompose(psi.to_state());
        REQUIRE(sd.gammas.size() == 3);
        CHECK(sd.gammas[0] == doctest::Approx(1.0));
        CHECK(std::abs(sd.gammas[1]) <= 1e-12);
        CHECK(std::abs(sd.gammas[2]) <= 1e-12);
    }

    SUBCASE("reconstruction and orthogonality on random states") {
        Rng rng(17);
        for (int i = 0; i < 30; ++i) {
            const System a = random_system(rng, 3, 4);
            const State omega = random_state(rng, a);
            const SpectralDecomposition sd = spectral_decompose(omega);
            REQUIRE(static_cast<int>(sd.gammas.size()) == a.total_dim());

            double gamma_sum = 0.0;
            for (double g : sd.gammas) {
                CHECK(g >= 0.0);
                gamma_sum += g;
            }
            CHECK(std::abs(gamma_sum - 1.0) <= 1e-10);

            // Oracle: the weighted projectors rebuild the embedded matrix.
            Matrix rebuilt = Matrix::Zero(a.total_dim(), a.total_dim());
            for (size_t k = 0; k < sd.gammas.size(); ++k)
                rebuilt += sd.gammas[k] * embed_state_full(sd.psis[k].to_state());
            CHECK((rebuilt - embed_state_full(omega)).norm() <= 1e-9);

            for (size_t p = 0; p < sd.psis.size(); ++p)
                for (size_t q = p + 1; q < sd.psis.size(); ++q) {
                    if (sd.psis[p].block_index() != sd.psis[q].block_index())
                        continue;
                    CHECK(std::abs(sd.psis[p].vector().dot(sd.psis[q].vector())) <= 1e-9);
                }
        }
    }
}

TEST_CASE("state distances") {
    const State a = classical_state_from_probs({0.3, 0.7});
    const State b = classical_state_from_probs({0.5, 0.5});
    CHECK(trace_distance(a, b) == doctest::Approx(0.2));
    CHECK(max_abs_diff(a, b) == doctest::Approx(0.2));
    CHECK(trace_distance(a, a) == 0.0);
    CHECK_THROWS_AS(trace_distance(a, maximally_mixed_qubit()), DomainMismatchError);
}
