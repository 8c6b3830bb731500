/*
 * Spin-1 algebra and the Hardy-type test on the vector-meson pair from
 * η_c → VV.
 *
 * The pair is in the |1,0> combination
 *   Ψ = (|+1>|-1> - |-1>|+1>)_z / √2
 * and each side measures the in-plane spin J_α = J_x cos α + J_y sin α.
 * Local realism requires
 *   P(J_x=0, J_γ=0) ≤ P(J_x=0, J_α≠0) + P(J_β≠0, J_γ=0) + P(J_β=0, J_α=0)
 * where in P(r₁, r₂) condition r₁ refers to meson 1 and r₂ to meson 2.
 *
 * The quantum violation LHS - RHS reaches (√2-1)/2. On [0,π)³ it has
 * exactly two maximizers, related by (α,β,γ) → (π-α, π-β, π-γ):
 *   (3π/8, π/4, 5π/8)  and  (5π/8, 3π/4, 3π/8).
 * Each probability is π-periodic in every angle, so adding π to any
 * angle gives further copies outside the fundamental box.
 */
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hepbell/angle.hpp"
#include "hepbell/inequality.hpp"
#include "hepbell/qcore.hpp"

namespace hepbell::spin1 {

struct Operators {
    qcore::Observable jx;
    qcore::Observable jy;
    qcore::Observable jz;
};

// Standard matrices in the J_z basis ordered (+1, 0, -1).
Operators spin1_operators();

qcore::Observable j_alpha(Angle alpha);

// |0>_α: the J_α = 0 eigenvector, first nonzero component real positive.
qcore::StateVector zero_eigenvector(Angle alpha);

qcore::StateVector make_singlet_like();

struct HardySettings {
    Angle alpha;
    Angle beta;
    Angle gamma;
};

HardySettings maximal_violation_settings();

struct HardyReport {
    double p_bb_aa = 0.0;   // P(J_β=0, J_α=0)
    double p_bneq_g = 0.0;  // P(J_β≠0, J_γ=0)
    double p_x_aneq = 0.0;  // P(J_x=0, J_α≠0)
    double p_x_g = 0.0;     // P(J_x=0, J_γ=0)
    double lhs_minus_rhs = 0.0;
    bool violated = false;

    double lhs() const noexcept { return p_x_g; }
    double rhs() const noexcept { return p_x_aneq + p_bneq_g + p_bb_aa; }
};

// Closed-form probabilities, each cross-checked against the Born rule on
// explicit J_α eigenprojectors (InternalInconsistency above 1e-8).
HardyReport hardy_probabilities(const HardySettings& s);

// Born-rule route alone: "≠0" events as complement projectors I - |0><0|.
HardyReport hardy_probabilities_born(const HardySettings& s);

// Born-rule route with "≠0" events expanded as the sum over the ±1 eigenprojectors.
HardyReport hardy_probabilities_decomposed(const HardySettings& s);

HardyReport hardy_violation(const HardySettings& s);

// LHS - RHS from the closed forms only; the optimizer's objective.
double hardy_difference(double alpha, double beta, double gamma);

struct MaximizeOptions {
    double grid_step = kPi / 32.0;
    double refine_tol = 1e-12;
    bool refine = true;
    std::optional<double> fixed_gamma;
};

struct Maximizer {
    HardySettings settings;
    double value = 0.0;
};

// Grid search over [0,π)³ plus coordinate-wise golden-section refinement.
// Among maximizers within 1e-9 of the best value the lexicographically
// smallest (α, β, γ), reduced to [0, π), is returned.
Maximizer maximize_violation(const MaximizeOptions& opt = {});
Maximizer maximize_violation(Angle grid_step, double refine_tol);

// ── CH inequality for the transverse vector-meson state ──────────────────────

// ½ sin²(θ₂ - θ₁)
double vv_joint_probability(Angle t1, Angle t2);

// P(n₁,n₂) - P(n₁,n₂') + P(n₁',n₂) + P(n₁',n₂') - P(n₁') - P(n₂) ≤ 0, singles ½.
InequalityReport ch_value_vv(Angle t1, Angle t1p, Angle t2, Angle t2p);

struct ChMaximum {
    std::array<Angle, 4> settings;  // t1, t1p, t2, t2p
    double value = 0.0;
};

ChMaximum maximize_ch_vv(double grid_step = kPi / 16.0, double refine_tol = 1e-13);

}  // namespace hepbell::spin1
