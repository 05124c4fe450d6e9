#ifndef PSMECH_EQUILIBRIUM_HPP
#define PSMECH_EQUILIBRIUM_HPP

// Relative equilibria X_h(z) = sum_i xi_i xi^i_P(z), the augmented function
// h_xi = h - <J - mu_e, xi>, its second variation on the level tangent, gauge
// degeneracies, and the formal-stability classification.

#include "psmech/common.hpp"
#include "psmech/geometry.hpp"
#include "psmech/subspace.hpp"
#include "psmech/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace psmech {

struct RelativeEquilibrium {
    Vec z;                     // the point
    Vec xi;                    // multiplier in the Lie algebra basis
    Vec mu_e;                  // J(z); empty in differential-only mode
    double residual = 0.0;     // |X_h(z) - xi_P(z) xi|
    bool accepted = false;     // residual < 1e-9 (1 + |X_h(z)|)
    bool xi_in_isotropy = false;
    int family_nullity = 0;    // kernel dimension of the converged Jacobian
};

struct EquilibriumSearchConfig {
    int max_iterations = 100;
    double lambda0 = 1e-3;  // Levenberg damping: x0.5 on success, x4 on failure
    double dedup_radius = 1e-6;
    double fd_step = 1e-6;
};

// Gauss-Newton with Levenberg damping on F(z, xi) = X_h(z) - xi_P(z) xi from
// each seed; non-converged seeds are skipped. Deduplicated by Euclidean
// distance on (z, xi).
std::vector<RelativeEquilibrium> find_relative_equilibria(const PolySymplecticStructure& P,
                                                          const SymmetryModel& S,
                                                          const KFunction& h,
                                                          const std::vector<Vec>& seeds,
                                                          const EquilibriumSearchConfig& cfg = {},
                                                          const ToleranceConfig& tol = {});

// |grad h^alpha_xi(z)| per alpha, with h_xi = h - <J - mu_e, xi>.
Vec h_xi_gradient_norms(const PolySymplecticStructure& P, const SymmetryModel& S,
                        const KFunction& h, const Vec& z, const Vec& xi);

// Hessian of h^alpha_xi at eq.z restricted to the level tangent; returned in
// the level-tangent basis (second value).
std::pair<Mat, SubspaceBasis> second_variation(const PolySymplecticStructure& P,
                                               const SymmetryModel& S, const KFunction& h,
                                               const RelativeEquilibrium& eq, int alpha,
                                               const ToleranceConfig& cfg = {});

// Max violation of the two degeneracy clauses: (d2 h_xi)(zeta_P, v) = 0 for
// zeta in the joint isotropy and v in the level tangent, and
// (d2 h^alpha_xi)(Y, .) = 0 for Y in ker omega^alpha ∩ level tangent.
double gauge_degeneracy_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                              const KFunction& h, const RelativeEquilibrium& eq,
                              const ToleranceConfig& cfg = {});

enum class StabilityClass {
    FormallyStable,
    FormallyStableNegative,
    NotFormallyStable,
    Inconclusive
};
std::string to_string(StabilityClass c);

struct StabilityReport {
    RelativeEquilibrium eq;
    std::vector<SubspaceBasis> supplements;   // S^alpha, ambient coordinates
    std::vector<Vec> spectra;                 // eigenvalues of the restricted Hessians
    std::vector<Definiteness> verdicts;       // per alpha
    bool spanning_ok = false;                 // S^1+...+S^k + T(G_mu z) = level tangent
    int level_dim = 0;
    StabilityClass classification = StabilityClass::Inconclusive;
    ToleranceConfig tolerances;
};

// S^alpha is the Euclidean-orthogonal complement, inside the level tangent, of
// (joint isotropy orbit + (ker omega^alpha ∩ level tangent)). A zero-dimensional
// S^alpha is vacuously definite.
StabilityReport classify_formal_stability(const PolySymplecticStructure& P,
                                          const SymmetryModel& S, const KFunction& h,
                                          const RelativeEquilibrium& eq,
                                          const ToleranceConfig& cfg = {});

// Definiteness of sum_alpha (d2 h^alpha_xi) projected to the quotient
// complement; PositiveDefinite certifies the strict-minimum property of the
// reduced summed Hamiltonian.
Definiteness reduced_minimum_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                   const KFunction& h, const RelativeEquilibrium& eq,
                                   const ToleranceConfig& cfg = {});

}  // namespace psmech

#endif
