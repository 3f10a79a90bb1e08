#include "doctest.h"
#include "test_support.hpp"

#include "tricorr/densemat.hpp"

#include <cmath>
#include <numeric>

using namespace tricorr;
using namespace tricorr::testing;

namespace {

SubsystemLayout qubits(std::initializer_list<const char*> labels) {
    std::vector<Subsystem> parts;
    for (const char* l : labels) parts.push_back({l, 2});
    return SubsystemLayout(parts);
}

DensityMatrix bell_plus() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
    return DensityMatrix(m, qubits({"A", "B"}));
}

}  // namespace

TEST_CASE("layout validation") {
    CHECK_THROWS_AS(SubsystemLayout({{"A", 2}, {"A", 2}}), DomainError);
    CHECK_THROWS_AS(SubsystemLayout({{"", 2}}), DomainError);
    CHECK_THROWS_AS(SubsystemLayout({{"A", 1}}), DomainError);
    CHECK_THROWS_AS(SubsystemLayout({{"A", 4}, {"B", 4}, {"C", 2}}), DomainError);
    const auto l = qubits({"A", "B", "E"});
    CHECK(l.total_dim() == 8);
    CHECK(l.index_of("E") == 2);
    CHECK_THROWS_AS(l.index_of("C"), DomainError);
    CHECK(l.restricted_to({"E", "A"}) == qubits({"A", "E"}));
}

TEST_CASE("density matrix contract") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
    CHECK_NOTHROW(DensityMatrix(m, qubits({"A"})));
    CHECK_THROWS_AS(DensityMatrix(m * 2.0, qubits({"A"})), DomainError);
    ComplexMatrix neg = matrix_from_rows({{1.2, 0.0}, {0.0, -0.2}});
    CHECK_THROWS_AS(DensityMatrix(neg, qubits({"A"})), DomainError);
    ComplexMatrix nonherm = matrix_from_rows({{0.5, 0.1}, {0.0, 0.5}});
    CHECK_THROWS_AS(DensityMatrix(nonherm, qubits({"A"})), DomainError);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, qubits({"A"})), DomainError);
}

TEST_CASE("kron examples") {
    CHECK(max_abs_diff(kron(pauli::identity(2), pauli::identity(2)), pauli::identity(4)) == 0.0);

    // σx ⊗ I swaps the |0·> and |1·> blocks.
    const ComplexMatrix sx_i = kron(pauli::x(), pauli::identity(2));
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 2) = expected(1, 3) = expected(2, 0) = expected(3, 1) = 1.0;
    CHECK(max_abs_diff(sx_i, expected) == 0.0);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_matrix(rng, 2), b = random_matrix(rng, 2);
        const auto c = random_matrix(rng, 2), d = random_matrix(rng, 2);
        CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    }
}

TEST_CASE("partial trace examples") {
    std::mt19937 rng(3);
    const DensityMatrix ra(random_density_matrix(rng, 2), qubits({"A"}));
    const DensityMatrix rb(random_density_matrix(rng, 2), qubits({"B"}));
    const auto reduced = partial_trace(kron(ra, rb), {"A"});
    CHECK(max_abs_diff(reduced.matrix(), ra.matrix()) < 1e-12);
    CHECK(reduced.layout() == qubits({"A"}));

    const auto marginal = partial_trace(bell_plus(), {"B"});
    CHECK(max_abs_diff(marginal.matrix(), pauli::identity(2) / 2.0) < 1e-15);

    CHECK_THROWS_AS(partial_trace(bell_plus(), {"C"}), DomainError);
    CHECK_THROWS_AS(partial_trace(bell_plus(), {}), DomainError);
    CHECK(max_abs_diff(partial_trace(bell_plus(), {"B", "A"}).matrix(), bell_plus().matrix()) == 0.0);
}

TEST_CASE("partial trace keeps the original order for mixed dimensions") {
    std::mt19937 rng(5);
    const SubsystemLayout la({{"P", 2}});
    const SubsystemLayout lq({{"Q", 3}});
    const SubsystemLayout lr({{"R", 2}});
    const DensityMatrix p(random_density_matrix(rng, 2), la);
    const DensityMatrix q(random_density_matrix(rng, 3), lq);
    const DensityMatrix r(random_density_matrix(rng, 2), lr);
    const auto pqr = kron(kron(p, q), r);
    CHECK(max_abs_diff(partial_trace(pqr, {"R", "P"}).matrix(), kron(p, r).matrix()) < 1e-12);
    CHECK(max_abs_diff(partial_trace(pqr, {"Q"}).matrix(), q.matrix()) < 1e-12);
}

TEST_CASE("property: partial trace composes and inverts kron") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix rho(random_density_matrix(rng, 8), qubits({"A", "B", "E"}));
        const auto two_steps = partial_trace(partial_trace(rho, {"A", "E"}), {"A"});
        const auto one_step = partial_trace(rho, {"A"});
        CHECK(max_abs_diff(two_steps.matrix(), one_step.matrix()) <= 1e-12);

        const DensityMatrix r1(random_density_matrix(rng, 4), qubits({"A", "B"}));
        const DensityMatrix r2(random_density_matrix(rng, 2), qubits({"E"}));
        CHECK(max_abs_diff(partial_trace(kron(r1, r2), {"A", "B"}).matrix(), r1.matrix()) <= 1e-12);
        CHECK(std::abs(partial_trace(rho, {"B"}).matrix().trace() - Complex(1.0)) < 1e-12);
    }
}

TEST_CASE("hermitian eigenvalue examples") {
    const auto sx = hermitian_eigenvalues(pauli::x());
    REQUIRE(sx.size() == 2);
    CHECK(sx[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sx[1] == doctest::Approx(-1.0).epsilon(1e-14));

    for (double v : hermitian_eigenvalues(pauli::identity(4) / 4.0)) CHECK(v == doctest::Approx(0.25));

    CHECK_THROWS_AS(hermitian_eigenvalues(matrix_from_rows({{1.0, 1.0}, {0.0, 1.0}})), DomainError);

    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = random_hermitian(rng, 8);
        const auto ev = hermitian_eigenvalues(h);
        CHECK(std::abs(std::accumulate(ev.begin(), ev.end(), 0.0) - h.trace().real()) <= 1e-10);
        CHECK(std::is_sorted(ev.rbegin(), ev.rend()));

        const auto sys = hermitian_eigensystem(h);
        ComplexMatrix d = ComplexMatrix::Zero(8, 8);
        for (int k = 0; k < 8; ++k) d(k, k) = sys.values[static_cast<std::size_t>(k)];
        CHECK(max_abs_diff(sys.vectors * d * sys.vectors.adjoint(), h) <= 1e-10);
    }
}

TEST_CASE("property: density spectra sum to one and lie in [0, 1]") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = (trial % 2) ? 4 : 8;
        const auto ev = hermitian_eigenvalues(random_density_matrix(rng, n));
        CHECK(std::abs(std::accumulate(ev.begin(), ev.end(), 0.0) - 1.0) <= 1e-10);
        for (double v : ev) {
            CHECK(v >= -1e-10);
            CHECK(v <= 1.0 + 1e-10);
        }
    }
}

TEST_CASE("spectrum clamping") {
    const auto pure = bell_plus();
    for (double v : clamped_spectrum(pure)) CHECK(v >= 0.0);
    // A tiny negative eigenvalue within round-off is accepted and clamped.
    ComplexMatrix m = matrix_from_rows({{1.0 + 5e-11, 0.0}, {0.0, -5e-11}});
    const auto rho = DensityMatrix::trusted(m, qubits({"A"}));
    const auto spec = clamped_spectrum(rho);
    CHECK(spec[1] == 0.0);
    ComplexMatrix bad = matrix_from_rows({{1.0 + 1e-6, 0.0}, {0.0, -1e-6}});
    CHECK_THROWS_AS(clamped_spectrum(DensityMatrix::trusted(bad, qubits({"A"}))), DomainError);
}

TEST_CASE("trace distance examples") {
    const auto l = qubits({"A"});
    const DensityMatrix zero(matrix_from_rows({{1.0, 0.0}, {0.0, 0.0}}), l);
    const DensityMatrix one(matrix_from_rows({{0.0, 0.0}, {0.0, 1.0}}), l);
    const DensityMatrix mixed(pauli::identity(2) / 2.0, l);
    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
    CHECK(trace_distance(mixed, zero) == doctest::Approx(0.5));
    CHECK_THROWS_AS(trace_distance(zero, bell_plus()), DomainError);
}
