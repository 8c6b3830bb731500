#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <numeric>
#include <random>

#include "hepbell/errors.hpp"
#include "hepbell/qcore.hpp"

using namespace hepbell;
using namespace hepbell::qcore;

namespace {

const double kS = 1.0 / std::sqrt(2.0);

StateVector random_state(std::mt19937_64& rng, std::vector<std::size_t> dims) {
    std::normal_distribution<double> g;
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    std::vector<Complex> amps(total);
    for (auto& a : amps) a = {g(rng), g(rng)};
    return StateVector(std::move(dims), std::move(amps), {});
}

Matrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = g(rng);
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = {g(rng), g(rng)};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("tensor of basis states") {
    const auto r = StateVector::basis({"R", "L"}, 0);
    const auto l = StateVector::basis({"R", "L"}, 1);
    const auto rl = tensor(r, l);
    CHECK(rl.dims() == std::vector<std::size_t>{2, 2});
    CHECK(std::abs(rl.amps()[1] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(rl.amps()[0]) + std::abs(rl.amps()[2]) + std::abs(rl.amps()[3]) == 0.0);
    CHECK(rl.labels()[1] == std::vector<std::string>{"R", "L"});
}

TEST_CASE("tensor is linear in the first factor") {
    const StateVector plus({2}, {1.0, 1.0}, {{"R", "L"}});
    const auto t = tensor(plus, StateVector::basis({"R", "L"}, 0));
    const std::vector<Complex> expected{kS, 0.0, kS, 0.0};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(t.amps()[i] - expected[i]) < 1e-15);
}

TEST_CASE("tensor preserves normalization and is associative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_state(rng, {2});
        const auto b = random_state(rng, {3});
        const auto c = random_state(rng, {2});
        CHECK(std::abs(tensor(a, b).norm() - 1.0) < 1e-12);
        const auto left = tensor(tensor(a, b), c);
        const auto right = tensor(a, tensor(b, c));
        for (std::size_t i = 0; i < left.size(); ++i) CHECK(std::abs(left.amps()[i] - right.amps()[i]) < 1e-12);
    }
}

TEST_CASE("tensor rejects dimensions beyond 81") {
    std::mt19937_64 rng(1);
    const auto big = random_state(rng, {3, 3, 3, 3});
    CHECK_THROWS_AS(tensor(big, random_state(rng, {2})), DimensionError);
}

TEST_CASE("state construction normalizes and validates") {
    const StateVector s({2}, {3.0, 4.0}, {});
    CHECK(std::abs(s.amps()[0].real() - 0.6) < 1e-15);
    CHECK_THROWS_AS(StateVector({2}, {0.0, 0.0}, {}), InvalidArgument);
    CHECK_THROWS_AS(StateVector({2}, {1.0}, {}), DimensionError);
    CHECK_THROWS_AS(StateVector({2}, {std::nan(""), 1.0}, {}), InvalidArgument);
}

TEST_CASE("Born probability on a product state") {
    const auto rl = tensor(StateVector::basis({"R", "L"}, 0), StateVector::basis({"R", "L"}, 1));
    const std::array<Complex, 2> r{1.0, 0.0};
    const std::array<SiteOperator, 2> ops{Projector::onto(r), Identity{}};
    CHECK(born_probability(rl, ops) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("antisymmetric state gives zero for equal projections") {
    const StateVector singlet({2, 2}, {0.0, kS, -kS, 0.0}, {});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 6.3);
    for (int i = 0; i < 20; ++i) {
        const double t = u(rng);
        const std::array<Complex, 2> n{std::cos(t), std::sin(t)};
        const std::array<SiteOperator, 2> ops{Projector::onto(n), Projector::onto(n)};
        CHECK(born_probability(singlet, ops) < 1e-15);
    }
}

TEST_CASE("projector validation") {
    CHECK_THROWS_AS(Projector(Matrix(2, {1.0, 0.0, 0.0, 2.0})), InvalidArgument);
    CHECK_THROWS_AS(Projector(Matrix(2, {0.5, 1.0, 0.0, 0.5})), InvalidArgument);
    CHECK_NOTHROW(Projector(Matrix(2, {0.5, 0.5, 0.5, 0.5})));
}

TEST_CASE("complete projector family sums to one at any site") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto psi = random_state(rng, {3, 2});
        const auto basis_state = random_state(rng, {3});
        const Projector p = Projector::onto(basis_state.amps());
        const std::array<SiteOperator, 2> a{p, Identity{}};
        const std::array<SiteOperator, 2> b{p.complement(), Identity{}};
        CHECK(std::abs(born_probability(psi, a) + born_probability(psi, b) - 1.0) < 1e-10);
    }
}

TEST_CASE("eigenvector of a diagonal operator") {
    const Observable jz(Matrix(3, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0}));
    const auto v = eigenvector_for_eigenvalue(jz, 0.0);
    CHECK(std::abs(v.amps()[1] - Complex(1.0)) < 1e-12);
    CHECK(std::abs(v.amps()[0]) < 1e-12);
    CHECK(std::abs(v.amps()[2]) < 1e-12);
    CHECK_THROWS_AS(eigenvector_for_eigenvalue(jz, 0.5, 1e-9), NotAnEigenvalue);
}

TEST_CASE("J_x null vector matches the hand solution") {
    // J_x v = 0  ⇔  v₁ = 0, v₀ + v₂ = 0  →  (1, 0, -1)/√2
    const Observable jx(Matrix(3, {0.0, kS, 0.0, kS, 0.0, kS, 0.0, kS, 0.0}));
    const auto v = eigenvector_for_eigenvalue(jx, 0.0);
    CHECK(std::abs(v.amps()[0] - Complex(kS)) < 1e-12);
    CHECK(std::abs(v.amps()[1]) < 1e-12);
    CHECK(std::abs(v.amps()[2] - Complex(-kS)) < 1e-12);
}

TEST_CASE("degenerate eigenspaces are rejected") {
    const Observable p(Matrix(3, {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0}));
    CHECK_THROWS_AS(eigenvector_for_eigenvalue(p, 1.0), DegenerateEigenspace);
    CHECK_NOTHROW(eigenvector_for_eigenvalue(p, 0.0));
}

TEST_CASE("non-Hermitian observables are rejected") {
    CHECK_THROWS_AS(Observable(Matrix(2, {0.0, 1.0, 0.0, 0.0})), InvalidArgument);
}

TEST_CASE("random Hermitian eigenpairs satisfy the eigen equation") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        const Observable a(random_hermitian(rng, n));
        const auto ev = eigenvalues(a);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += a.matrix()(i, i).real();
        CHECK(std::abs(trace - std::accumulate(ev.begin(), ev.end(), 0.0)) < 1e-10);
        for (double lambda : ev) {
            const auto v = eigenvector_for_eigenvalue(a, lambda);
            const auto av = a.matrix().apply(v.amps());
            double resid = 0.0;
            for (std::size_t i = 0; i < n; ++i) resid += std::norm(av[i] - lambda * v.amps()[i]);
            CHECK(std::sqrt(resid) < 1e-9);
            // Phase convention: first nonzero component real and positive.
            for (const auto& c : v.amps()) {
                if (std::abs(c) > 1e-14) {
                    CHECK(c.real() > 0.0);
                    CHECK(std::abs(c.imag()) < 1e-14);
                    break;
                }
            }
        }
    }
}

TEST_CASE("change of site basis is unitary-only") {
    const StateVector s({2}, {1.0, 0.0}, {{"a", "b"}});
    CHECK_THROWS_AS(change_site_basis(s, 0, Matrix(2, {1.0, 1.0, 0.0, 1.0}), {"c", "d"}), InvalidArgument);
}

TEST_CASE("spectra with a repeated eigenvalue stay accurate") {
    // A = U diag(d, d, e) U† for random unitary U built by Gram-Schmidt.
    std::mt19937_64 rng(99);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        std::array<std::array<Complex, 3>, 3> u{};
        for (std::size_t c = 0; c < 3; ++c) {
            for (auto& x : u[c]) x = {g(rng), g(rng)};
            for (std::size_t p = 0; p < c; ++p) {
                Complex dot = 0.0;
                for (std::size_t i = 0; i < 3; ++i) dot += std::conj(u[p][i]) * u[c][i];
                for (std::size_t i = 0; i < 3; ++i) u[c][i] -= dot * u[p][i];
            }
            double n = 0.0;
            for (auto& x : u[c]) n += std::norm(x);
            for (auto& x : u[c]) x /= std::sqrt(n);
        }
        const double d = g(rng), e = (trial % 2 ? d + 3.0 : d - 3.0);
        const std::array<double, 3> diag{d, d, e};
        Matrix m(3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                for (std::size_t k = 0; k < 3; ++k) m(r, c) += u[k][r] * diag[k] * std::conj(u[k][c]);
        for (std::size_t r = 0; r < 3; ++r) m(r, r) = m(r, r).real();
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = r + 1; c < 3; ++c) m(c, r) = std::conj(m(r, c));
        const auto ev = eigenvalues(Observable(m));
        std::array<double, 3> expected = diag;
        std::sort(expected.begin(), expected.end());
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-12);
        CHECK_THROWS_AS(eigenvector_for_eigenvalue(Observable(m), d), DegenerateEigenspace);
    }
}
