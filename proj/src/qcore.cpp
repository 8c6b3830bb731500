#include "hepbell/qcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hepbell/errors.hpp"

namespace hepbell::qcore {

namespace {

bool all_finite(std::span<const Complex> v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

double norm_of(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

std::size_t product(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::string> default_labels(std::size_t dim) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(std::to_string(i));
    return out;
}

}  // namespace

// ── Matrix ───────────────────────────────────────────────────────────────────

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Matrix::Matrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) throw DimensionError("matrix data does not match dimension");
    if (!all_finite(data_)) throw InvalidArgument("matrix has non-finite entries");
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::outer(std::span<const Complex> v) {
    Matrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

std::vector<Complex> Matrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) throw DimensionError("vector length does not match matrix");
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix dimensions differ");
    Matrix m(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix dimensions differ");
    Matrix m(a.dim_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim_ != b.dim_) throw DimensionError("matrix dimensions differ");
    const std::size_t n = a.dim_;
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t c = 0; c < n; ++c) m(r, c) += a(r, k) * b(k, c);
    return m;
}

Matrix operator*(Complex s, const Matrix& a) {
    Matrix m = a;
    for (auto& x : m.data_) x *= s;
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw DimensionError("matrix dimensions differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

// ── Observable / Projector ───────────────────────────────────────────────────

Observable::Observable(Matrix m) : m_(std::move(m)) {
    if (max_abs_diff(m_, m_.adjoint()) > kHermitianTol)
        throw InvalidArgument("observable is not Hermitian");
}

Projector::Projector(Matrix m) : m_(std::move(m)) {
    if (max_abs_diff(m_, m_.adjoint()) > kHermitianTol)
        throw InvalidArgument("projector is not Hermitian");
    if (max_abs_diff(m_ * m_, m_) > kIdempotentTol)
        throw InvalidArgument("projector is not idempotent");
}

Projector Projector::onto(std::span<const Complex> v) {
    const double n = norm_of(v);
    if (!(n > 0.0)) throw InvalidArgument("cannot project onto the zero vector");
    std::vector<Complex> u(v.begin(), v.end());
    for (auto& c : u) c /= n;
    return Projector(Matrix::outer(u));
}

Projector Projector::complement() const { return Projector(Matrix::identity(dim()) - m_); }

// ── StateVector ──────────────────────────────────────────────────────────────

StateVector::StateVector(std::vector<std::size_t> dims, std::vector<Complex> amps,
                         std::vector<std::vector<std::string>> labels)
    : dims_(std::move(dims)), amps_(std::move(amps)), labels_(std::move(labels)) {
    if (dims_.empty()) throw DimensionError("state needs at least one site");
    if (std::find(dims_.begin(), dims_.end(), std::size_t{0}) != dims_.end())
        throw DimensionError("site dimension must be positive");
    const std::size_t total = product(dims_);
    if (total > kMaxTotalDim) throw DimensionError("total dimension exceeds " + std::to_string(kMaxTotalDim));
    if (amps_.size() != total) throw DimensionError("amplitude count does not match dims");
    if (labels_.empty()) {
        for (auto d : dims_) labels_.push_back(default_labels(d));
    }
    if (labels_.size() != dims_.size()) throw DimensionError("one label list per site required");
    for (std::size_t s = 0; s < dims_.size(); ++s)
        if (labels_[s].size() != dims_[s]) throw DimensionError("label count does not match site dim");
    if (!all_finite(amps_)) throw InvalidArgument("amplitudes must be finite");
    const double n = norm_of(amps_);
    if (!(n > 0.0)) throw InvalidArgument("state has zero norm");
    for (auto& c : amps_) c /= n;
}

StateVector StateVector::basis(std::vector<std::string> labels, std::size_t index) {
    const std::size_t d = labels.size();
    if (index >= d) throw DimensionError("basis index out of range");
    std::vector<Complex> amps(d);
    amps[index] = 1.0;
    return StateVector({d}, std::move(amps), {std::move(labels)});
}

std::size_t StateVector::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw DimensionError("index rank does not match state");
    std::size_t flat = 0;
    for (std::size_t s = 0; s < dims_.size(); ++s) {
        if (index[s] >= dims_[s]) throw DimensionError("index out of range");
        flat = flat * dims_[s] + index[s];
    }
    return flat;
}

std::vector<std::size_t> StateVector::multi_index(std::size_t flat) const {
    std::vector<std::size_t> idx(dims_.size());
    for (std::size_t s = dims_.size(); s-- > 0;) {
        idx[s] = flat % dims_[s];
        flat /= dims_[s];
    }
    return idx;
}

Complex StateVector::at(std::span<const std::size_t> index) const { return amps_[flat_index(index)]; }

double StateVector::norm() const { return norm_of(amps_); }

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    if (a.size() * b.size() > kMaxTotalDim)
        throw DimensionError("tensor product exceeds " + std::to_string(kMaxTotalDim));
    std::vector<Complex> amps;
    amps.reserve(a.size() * b.size());
    for (const auto& x : a.amps())
        for (const auto& y : b.amps()) amps.push_back(x * y);
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return StateVector(std::move(dims), std::move(amps), std::move(labels));
}

namespace {

// Strides for site `site`: amplitudes at fixed other indices are spaced by `inner`.
void apply_local_inplace(std::vector<Complex>& amps, const std::vector<std::size_t>& dims,
                         std::size_t site, const Matrix& m) {
    const std::size_t d = dims[site];
    if (m.dim() != d) throw DimensionError("site operator dimension mismatch");
    std::size_t inner = 1;
    for (std::size_t s = site + 1; s < dims.size(); ++s) inner *= dims[s];
    const std::size_t outer = amps.size() / (d * inner);
    std::vector<Complex> buf(d);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
            const std::size_t base = o * d * inner + i;
            for (std::size_t k = 0; k < d; ++k) buf[k] = amps[base + k * inner];
            for (std::size_t r = 0; r < d; ++r) {
                Complex acc = 0.0;
                for (std::size_t k = 0; k < d; ++k) acc += m(r, k) * buf[k];
                amps[base + r * inner] = acc;
            }
        }
    }
}

}  // namespace

std::vector<Complex> apply_local(const StateVector& s, std::size_t site, const Matrix& m) {
    if (site >= s.sites()) throw DimensionError("site out of range");
    std::vector<Complex> amps = s.amps();
    apply_local_inplace(amps, s.dims(), site, m);
    return amps;
}

StateVector change_site_basis(const StateVector& s, std::size_t site, const Matrix& m,
                              std::vector<std::string> new_labels) {
    if (max_abs_diff(m * m.adjoint(), Matrix::identity(m.dim())) > kNormTol * 10)
        throw InvalidArgument("basis change must be unitary");
    auto labels = s.labels();
    labels.at(site) = std::move(new_labels);
    return StateVector(s.dims(), apply_local(s, site, m), std::move(labels));
}

double born_probability(const StateVector& s, std::span<const SiteOperator> ops) {
    if (ops.size() != s.sites()) throw DimensionError("one operator per site required");
    std::vector<Complex> amps = s.amps();
    for (std::size_t site = 0; site < ops.size(); ++site) {
        if (const auto* p = std::get_if<Projector>(&ops[site])) {
            apply_local_inplace(amps, s.dims(), site, p->matrix());
        }
    }
    double prob = 0.0;
    for (const auto& c : amps) prob += std::norm(c);
    if (!std::isfinite(prob)) throw InternalInconsistency("non-finite Born probability");
    return std::clamp(prob, 0.0, 1.0);
}

Complex inner(const StateVector& a, const StateVector& b) {
    if (a.dims() != b.dims()) throw DimensionError("inner product of differently shaped states");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.amps()[i]) * b.amps()[i];
    return acc;
}

// ── Eigenproblems ────────────────────────────────────────────────────────────

namespace {

std::vector<Complex> null_vector(const Matrix& m);

std::array<double, 2> eigen2(Complex a00, Complex a01, Complex a11) {
    const double mean = 0.5 * (a00.real() + a11.real());
    const double half = 0.5 * (a00.real() - a11.real());
    const double rad = std::hypot(half, std::abs(a01));
    return {mean - rad, mean + rad};
}

std::array<double, 2> deflated_pair(const Matrix& a, double lambda) {
    auto v = null_vector(a - Complex(lambda) * Matrix::identity(3));
    const double nv = norm_of(v);
    for (auto& c : v) c /= nv;
    // Orthonormal completion {u, w} of v.
    const std::size_t k = static_cast<std::size_t>(
        std::min_element(v.begin(), v.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); }) - v.begin());
    std::array<Complex, 3> u{};
    u[k] = 1.0;
    Complex proj = 0.0;
    for (std::size_t i = 0; i < 3; ++i) proj += std::conj(v[i]) * u[i];
    for (std::size_t i = 0; i < 3; ++i) u[i] -= proj * v[i];
    const double nu = norm_of(u);
    for (auto& c : u) c /= nu;
    // w = conj(v × u) is orthogonal to both under the Hermitian product.
    const std::array<Complex, 3> w{std::conj(v[1] * u[2] - v[2] * u[1]), std::conj(v[2] * u[0] - v[0] * u[2]),
                                   std::conj(v[0] * u[1] - v[1] * u[0])};
    auto form = [&](const std::array<Complex, 3>& x, const std::array<Complex, 3>& y) {
        const auto ay = a.apply(y);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < 3; ++i) acc += std::conj(x[i]) * ay[i];
        return acc;
    };
    return eigen2(form(u, u), form(u, w), form(w, w));
}

}  // namespace


std::vector<double> eigenvalues(const Observable& obs) {
    const Matrix& a = obs.matrix();
    switch (a.dim()) {
        case 1:
            return {a(0, 0).real()};
        case 2: {
            const auto ev = eigen2(a(0, 0), a(0, 1), a(1, 1));
            return {ev[0], ev[1]};
        }
        case 3: {
            // Trigonometric solution of the real characteristic cubic.
            const double q = (a(0, 0).real() + a(1, 1).real() + a(2, 2).real()) / 3.0;
            const double off = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
            const double d0 = a(0, 0).real() - q, d1 = a(1, 1).real() - q, d2 = a(2, 2).real() - q;
            const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
            if (p < 1e-300) return {q, q, q};
            const Matrix b = Complex(1.0 / p) * (a - Complex(q) * Matrix::identity(3));
            const Complex det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                                b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                                b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
            const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
            const double phi = std::acos(r) / 3.0;
            const double hi = q + 2.0 * p * std::cos(phi);
            const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
            const double mid = 3.0 * q - hi - lo;
            // The trigonometric form is only accurate for the root farthest from
            // the others; the remaining pair comes from the 2x2 block of A on
            // the orthogonal complement of its eigenvector.
            const double separated = (hi - mid > mid - lo) ? hi : lo;
            const auto pair = deflated_pair(a, separated);
            std::vector<double> ev{separated, pair[0], pair[1]};
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        default:
            throw DimensionError("closed-form eigensolver supports dimensions 1..3");
    }
}

void fix_global_phase(std::span<Complex> v) {
    for (const auto& c : v) {
        if (std::abs(c) > 1e-14) {
            const Complex phase = std::conj(c) / std::abs(c);
            for (auto& x : v) x *= phase;
            return;
        }
    }
}

namespace {

std::vector<Complex> null_vector(const Matrix& m) {
    const std::size_t n = m.dim();
    if (n == 1) return {1.0};
    if (n == 2) {
        const std::array<Complex, 2> from0{-m(0, 1), m(0, 0)};
        const std::array<Complex, 2> from1{-m(1, 1), m(1, 0)};
        const auto& best = norm_of(from0) >= norm_of(from1) ? from0 : from1;
        if (norm_of(best) == 0.0) return {1.0, 0.0};
        return {best.begin(), best.end()};
    }
    // Bilinear cross products of row pairs are annihilated by every row of a
    // rank-2 matrix; keep the best conditioned one.
    auto cross = [&](std::size_t i, std::size_t j) {
        return std::array<Complex, 3>{m(i, 1) * m(j, 2) - m(i, 2) * m(j, 1),
                                      m(i, 2) * m(j, 0) - m(i, 0) * m(j, 2),
                                      m(i, 0) * m(j, 1) - m(i, 1) * m(j, 0)};
    };
    std::array<std::array<Complex, 3>, 3> cands{cross(0, 1), cross(0, 2), cross(1, 2)};
    const auto best = std::max_element(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
        return norm_of(x) < norm_of(y);
    });
    return {best->begin(), best->end()};
}

}  // namespace

StateVector eigenvector_for_eigenvalue(const Observable& obs, double target, double tol,
                                       std::vector<std::string> labels) {
    const auto ev = eigenvalues(obs);
    const auto closest = std::min_element(ev.begin(), ev.end(), [&](double x, double y) {
        return std::abs(x - target) < std::abs(y - target);
    });
    if (std::abs(*closest - target) > tol)
        throw NotAnEigenvalue("no eigenvalue within " + std::to_string(tol) + " of " + std::to_string(target));
    const double lambda = *closest;
    const auto mult = std::count_if(ev.begin(), ev.end(), [&](double x) { return std::abs(x - lambda) <= tol; });
    if (mult > 1) throw DegenerateEigenspace("eigenvalue " + std::to_string(lambda) + " is degenerate");

    const std::size_t n = obs.dim();
    auto v = null_vector(obs.matrix() - Complex(lambda) * Matrix::identity(n));
    const double nv = norm_of(v);
    if (!(nv > 0.0)) throw InternalInconsistency("null space computation collapsed");
    for (auto& c : v) c /= nv;
    fix_global_phase(v);
    if (labels.empty()) labels = default_labels(n);
    return StateVector({n}, std::move(v), {std::move(labels)});
}

}  // namespace hepbell::qcore
