#include "hepbell/spin1.hpp"

#include <algorithm>
#include <cmath>

#include "hepbell/errors.hpp"
#include "hepbell/search.hpp"

namespace hepbell::spin1 {

using qcore::Complex;
using qcore::Matrix;
using qcore::Observable;
using qcore::Projector;
using qcore::SiteOperator;
using qcore::StateVector;

namespace {

const std::vector<std::string> kZLabels{"+1", "0", "-1"};
constexpr double kCrossCheckTol = 1e-8;

Projector eigenprojector(Angle a, double eigenvalue) {
    const auto v = qcore::eigenvector_for_eigenvalue(j_alpha(a), eigenvalue);
    return Projector::onto(v.amps());
}

Projector zero_projector(Angle a) { return eigenprojector(a, 0.0); }

double born(const StateVector& psi, SiteOperator first, SiteOperator second) {
    const std::array<SiteOperator, 2> ops{std::move(first), std::move(second)};
    return qcore::born_probability(psi, ops);
}

double sq(double x) { return x * x; }

}  // namespace

Operators spin1_operators() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    Matrix jx(3, {0.0, s, 0.0, s, 0.0, s, 0.0, s, 0.0});
    Matrix jy(3, {0.0, -i * s, 0.0, i * s, 0.0, -i * s, 0.0, i * s, 0.0});
    Matrix jz(3, {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0});
    return {Observable(std::move(jx)), Observable(std::move(jy)), Observable(std::move(jz))};
}

Observable j_alpha(Angle alpha) {
    const auto ops = spin1_operators();
    const double a = alpha.radians();
    return Observable(Complex(std::cos(a)) * ops.jx.matrix() + Complex(std::sin(a)) * ops.jy.matrix());
}

StateVector zero_eigenvector(Angle alpha) { return qcore::eigenvector_for_eigenvalue(j_alpha(alpha), 0.0, qcore::kEigenTol, kZLabels); }

StateVector make_singlet_like() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<Complex> amps(9);
    amps[0 * 3 + 2] = s;   // |+1>|-1>
    amps[2 * 3 + 0] = -s;  // |-1>|+1>
    return StateVector({3, 3}, std::move(amps), {kZLabels, kZLabels});
}

HardySettings maximal_violation_settings() {
    return {Angle::pi_fraction(3, 8), Angle::pi_fraction(1, 4), Angle::pi_fraction(5, 8)};
}

// ── Hardy probabilities ──────────────────────────────────────────────────────

HardyReport hardy_probabilities_born(const HardySettings& s) {
    const StateVector psi = make_singlet_like();
    const Projector za = zero_projector(s.alpha), zb = zero_projector(s.beta), zg = zero_projector(s.gamma);
    const Projector zx = zero_projector(Angle(0.0));
    HardyReport r;
    r.p_bb_aa = born(psi, zb, za);
    r.p_bneq_g = born(psi, zb.complement(), zg);
    r.p_x_aneq = born(psi, zx, za.complement());
    r.p_x_g = born(psi, zx, zg);
    return r;
}

HardyReport hardy_probabilities_decomposed(const HardySettings& s) {
    const StateVector psi = make_singlet_like();
    const Projector za = zero_projector(s.alpha), zb = zero_projector(s.beta), zg = zero_projector(s.gamma);
    const Projector zx = zero_projector(Angle(0.0));
    HardyReport r;
    r.p_bb_aa = born(psi, zb, za);
    r.p_bneq_g = born(psi, eigenprojector(s.beta, 1.0), zg) + born(psi, eigenprojector(s.beta, -1.0), zg);
    r.p_x_aneq = born(psi, zx, eigenprojector(s.alpha, 1.0)) + born(psi, zx, eigenprojector(s.alpha, -1.0));
    r.p_x_g = born(psi, zx, zg);
    return r;
}

HardyReport hardy_probabilities(const HardySettings& s) {
    const double a = s.alpha.radians(), b = s.beta.radians(), g = s.gamma.radians();
    HardyReport r;
    r.p_bb_aa = 0.5 * sq(std::sin(a - b));
    r.p_bneq_g = 0.5 * sq(std::cos(b - g));
    r.p_x_aneq = 0.5 * sq(std::cos(a));
    r.p_x_g = 0.5 * sq(std::sin(g));

    const HardyReport born = hardy_probabilities_born(s);
    const double worst = std::max({std::abs(born.p_bb_aa - r.p_bb_aa), std::abs(born.p_bneq_g - r.p_bneq_g),
                                   std::abs(born.p_x_aneq - r.p_x_aneq), std::abs(born.p_x_g - r.p_x_g)});
    if (worst > kCrossCheckTol)
        throw InternalInconsistency("closed-form Hardy probabilities disagree with Born rule by " + std::to_string(worst));
    return r;
}

double hardy_difference(double alpha, double beta, double gamma) {
    return 0.5 * sq(std::sin(gamma)) -
           0.5 * (sq(std::cos(alpha)) + sq(std::cos(beta - gamma)) + sq(std::sin(alpha - beta)));
}

HardyReport hardy_violation(const HardySettings& s) {
    HardyReport r = hardy_probabilities(s);
    r.lhs_minus_rhs = r.lhs() - r.rhs();
    r.violated = r.lhs_minus_rhs > 1e-12;
    return r;
}

// ── Maximization ─────────────────────────────────────────────────────────────

namespace {

// Reduce to [0, π), folding values a hair below π onto 0.
double fold_pi(double x) {
    const double w = wrap(x, kPi);
    return kPi - w < 1e-7 ? 0.0 : w;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > 1e-6) return a[i] < b[i];
    }
    return false;
}

std::vector<double> canonical_best(const std::vector<search::Result>& results, double tie_tol) {
    const double best = results.front().value;
    std::optional<std::vector<double>> pick;
    for (const auto& r : results) {
        if (r.value < best - tie_tol) continue;
        std::vector<double> x = r.argmax;
        for (auto& v : x) v = fold_pi(v);
        if (!pick || lex_less(x, *pick)) pick = x;
    }
    return *pick;
}

}  // namespace

Maximizer maximize_violation(const MaximizeOptions& opt) {
    if (!(opt.grid_step > 0.0) || opt.grid_step > kPi / 16.0 + 1e-15)
        throw InvalidArgument("grid step must lie in (0, π/16]");
    if (opt.refine && opt.refine_tol < 1e-12) throw InvalidArgument("refine tolerance must be at least 1e-12");

    search::Options so;
    so.grid_step = opt.grid_step;
    so.lower = 0.0;
    so.upper = kPi;
    so.refine = opt.refine;
    so.refine_tol = opt.refine_tol;
    if (opt.fixed_gamma) {
        so.fixed = {2};
        so.start = {0.0, 0.0, *opt.fixed_gamma};
    }
    const auto f = [](std::span<const double> x) { return hardy_difference(x[0], x[1], x[2]); };
    const auto results = search::grid_then_refine_all(f, 3, so);
    const auto x = canonical_best(results, 1e-9);
    return {{Angle(x[0]), Angle(x[1]), Angle(x[2])}, hardy_difference(x[0], x[1], x[2])};
}

Maximizer maximize_violation(Angle grid_step, double refine_tol) {
    MaximizeOptions opt;
    opt.grid_step = grid_step.radians();
    opt.refine_tol = refine_tol;
    return maximize_violation(opt);
}

// ── CH for vector mesons ─────────────────────────────────────────────────────

double vv_joint_probability(Angle t1, Angle t2) { return 0.5 * sq(std::sin(t2.radians() - t1.radians())); }

InequalityReport ch_value_vv(Angle t1, Angle t1p, Angle t2, Angle t2p) {
    std::vector<InequalityTerm> terms{
        {"P(n1,n2)", 1.0, vv_joint_probability(t1, t2), std::nullopt},
        {"P(n1,n2')", -1.0, vv_joint_probability(t1, t2p), std::nullopt},
        {"P(n1',n2)", 1.0, vv_joint_probability(t1p, t2), std::nullopt},
        {"P(n1',n2')", 1.0, vv_joint_probability(t1p, t2p), std::nullopt},
        {"P(n1')", -1.0, 0.5, std::nullopt},
        {"P(n2)", -1.0, 0.5, std::nullopt},
    };
    return make_report(std::move(terms), 0.0);
}

ChMaximum maximize_ch_vv(double grid_step, double refine_tol) {
    search::Options so;
    so.grid_step = grid_step;
    so.lower = 0.0;
    so.upper = kPi;
    so.refine_tol = refine_tol;
    so.seeds = 4;
    const auto f = [](std::span<const double> x) {
        return ch_value_vv(Angle(x[0]), Angle(x[1]), Angle(x[2]), Angle(x[3])).value;
    };
    const auto best = search::grid_then_refine(f, 4, so);
    const auto& x = best.argmax;
    return {{Angle(x[0]), Angle(x[1]), Angle(x[2]), Angle(x[3])}, best.value};
}

}  // namespace hepbell::spin1
