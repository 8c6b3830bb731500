/*
 * Small exact complex linear algebra for the few-qubit / few-qutrit states
 * used throughout the toolkit.
 *
 *   StateVector  normalized amplitudes over a labeled tensor-product basis,
 *                row-major with site 0 most significant.
 *   Matrix       dense square complex matrix.
 *   Observable   Hermitian Matrix.
 *   Projector    Hermitian idempotent Matrix.
 *
 * Eigenproblems are only solved for dimensions 1..3, in closed form: the
 * spectrum from the characteristic polynomial, the eigenvector as the null
 * space of A - λI. Returned eigenvectors carry the phase convention that the
 * first nonzero component is real and positive.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace hepbell::qcore {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxTotalDim = 81;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kIdempotentTol = 1e-10;
inline constexpr double kEigenTol = 1e-9;

class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);
    Matrix(std::size_t dim, std::vector<Complex> row_major);

    static Matrix identity(std::size_t dim);
    // |v><v| for a (not necessarily normalized) vector.
    static Matrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> data() const noexcept { return data_; }

    Matrix adjoint() const;
    std::vector<Complex> apply(std::span<const Complex> v) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(Complex s, const Matrix& a);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

// Largest entry-wise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

class Observable {
public:
    // Throws InvalidArgument if m is not Hermitian within kHermitianTol.
    explicit Observable(Matrix m);
    std::size_t dim() const noexcept { return m_.dim(); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

class Projector {
public:
    // Throws InvalidArgument unless m is Hermitian and idempotent.
    explicit Projector(Matrix m);
    static Projector onto(std::span<const Complex> v);
    Projector complement() const;

    std::size_t dim() const noexcept { return m_.dim(); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

struct Identity {};
using SiteOperator = std::variant<Identity, Projector>;

class StateVector {
public:
    // Normalizes amps. Throws on shape mismatch, zero norm or non-finite input.
    StateVector(std::vector<std::size_t> dims, std::vector<Complex> amps,
                std::vector<std::vector<std::string>> labels);

    // Single-site basis state |labels[index]>.
    static StateVector basis(std::vector<std::string> labels, std::size_t index);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const std::vector<Complex>& amps() const noexcept { return amps_; }
    const std::vector<std::vector<std::string>>& labels() const noexcept { return labels_; }
    std::size_t sites() const noexcept { return dims_.size(); }
    std::size_t size() const noexcept { return amps_.size(); }

    // Amplitude at a multi-index, one entry per site.
    Complex at(std::span<const std::size_t> index) const;
    std::size_t flat_index(std::span<const std::size_t> index) const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;

    double norm() const;

private:
    std::vector<std::size_t> dims_;
    std::vector<Complex> amps_;
    std::vector<std::vector<std::string>> labels_;
};

StateVector tensor(const StateVector& a, const StateVector& b);

// Applies a per-site matrix to one tensor factor. Used for local basis
// changes; the result is not renormalized.
std::vector<Complex> apply_local(const StateVector& s, std::size_t site, const Matrix& m);

// Re-expresses a state in a new basis at one site: new_amp = m * old_amp on
// that site, with new labels. m must be unitary.
StateVector change_site_basis(const StateVector& s, std::size_t site, const Matrix& m,
                              std::vector<std::string> new_labels);

// <Ψ| ⊗ᵢ Pᵢ |Ψ>, clamped to [0, 1].
double born_probability(const StateVector& s, std::span<const SiteOperator> ops);

// Inner product <a|b> over identical shapes.
Complex inner(const StateVector& a, const StateVector& b);

// Ascending eigenvalues of a Hermitian operator of dimension 1..3.
std::vector<double> eigenvalues(const Observable& obs);

// Unit eigenvector for the eigenvalue within tol of target, labeled with
// the given site labels (defaults to "0".."dim-1").
StateVector eigenvector_for_eigenvalue(const Observable& obs, double target, double tol = kEigenTol,
                                       std::vector<std::string> labels = {});

// First nonzero (|c| > 1e-14) component made real and positive.
void fix_global_phase(std::span<Complex> v);

}  // namespace hepbell::qcore
