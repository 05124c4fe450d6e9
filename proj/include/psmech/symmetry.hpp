#ifndef PSMECH_SYMMETRY_HPP
#define PSMECH_SYMMETRY_HPP

// Lie group actions given infinitesimally: fundamental vector fields, optional
// structure constants, and a momentum map supplied either as k*g scalar fields
// J^alpha_i or differential-only as the one-forms iota_{xi^i_P} omega^alpha.
//
// Structure constants are the Lie-algebra ones, [e_i, e_j] = c^l_{ij} e_l.
// Fundamental vector fields of a left action anti-commute accordingly:
// [xi^i_P, xi^j_P] = -c^l_{ij} xi^l_P, which is what bracket_closure_check
// verifies.

#include "psmech/common.hpp"
#include "psmech/fields.hpp"
#include "psmech/geometry.hpp"
#include "psmech/subspace.hpp"

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace psmech {

struct Momentum {
    enum class Mode { None, Explicit, Differential };
    Mode mode = Mode::None;
    // Explicit: k*g scalar fields, row-major [alpha][i].
    std::vector<ScalarFieldPtr> J;
};

struct SymmetryModel {
    int g_dim = 0;
    std::vector<VectorFieldPtr> generators;
    // c[l] is the g x g matrix with (i,j) entry c^l_{ij}.
    std::optional<std::vector<Mat>> structure_constants;
    Momentum momentum;

    bool explicit_momentum() const { return momentum.mode == Momentum::Mode::Explicit; }
};

struct LevelSpec {
    Vec mu;    // k*g values, row-major [alpha][i]; empty in differential-only mode
    Vec seed;  // a point on the level set
};

// Values of all generators at x, as columns of an n x g matrix.
Mat generator_matrix(const SymmetryModel& S, const Vec& x);

// Momentum differentials as rows: (k*g) x n. Explicit mode: grad J^alpha_i;
// differential-only: (A^alpha^T xi^i_P)^T.
Mat momentum_rows(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x);
Mat momentum_rows_alpha(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                        int alpha);
// Momentum values (explicit mode only), row-major [alpha][i].
Vec momentum_value(const SymmetryModel& S, const Vec& x);
// Second derivatives of the momentum components. Differential-only mode uses
// the symmetrized Jacobian of the one-form coefficients (valid because the
// forms are closed).
std::vector<Mat> momentum_hessians(const PolySymplecticStructure& P, const SymmetryModel& S,
                                   const Vec& x);

struct MomentumCheck {
    Mat defects;  // k x g: max |A^alpha^T xi^i - grad J^alpha_i| over points
    bool pass = false;
    double tol = 1e-6;
};
// Explicit mode: verifies iota_{xi_P} omega^alpha = d J^alpha_i.
// Differential-only: checks closedness of each iota_{xi^i_P} omega^alpha.
MomentumCheck verify_momentum(const PolySymplecticStructure& P, const SymmetryModel& S,
                              const std::vector<Vec>& points);

// Max |[xi^i_P, xi^j_P] + c^l_{ij} xi^l_P| over points (left-action sign).
double bracket_closure_check(const SymmetryModel& S, const std::vector<Vec>& points);

// Max |L_{xi^i_P} A^alpha| over points (invariance of the forms).
double invariance_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                        const std::vector<Vec>& points);

SubspaceBasis orbit_tangent(const SymmetryModel& S, const Vec& x, const ToleranceConfig& cfg = {});
SubspaceBasis level_tangent(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                            const ToleranceConfig& cfg = {});

constexpr int kJointIsotropy = -1;
// Coefficient-space isotropy: kernel of M^alpha_{ji} = dJ^alpha_j(x) . xi^i_P(x)
// (alpha = kJointIsotropy intersects over all alpha). The optional override
// lists generator indices that span the isotropy, for documentation parity.
SubspaceBasis isotropy_algebra(const PolySymplecticStructure& P, const SymmetryModel& S,
                               const Vec& x, int alpha = kJointIsotropy,
                               const ToleranceConfig& cfg = {},
                               const std::optional<std::vector<int>>& override_generators = {});
// Tangent space to the isotropy-group orbit: span of xi_P(x) * (isotropy basis).
SubspaceBasis isotropy_orbit_tangent(const PolySymplecticStructure& P, const SymmetryModel& S,
                                     const Vec& x, int alpha = kJointIsotropy,
                                     const ToleranceConfig& cfg = {},
                                     const std::optional<std::vector<int>>& override_generators = {});

struct WeakRegularityReport {
    std::vector<int> ranks;      // stacked-momentum rank per sample
    bool constant_rank = false;  // the weak-regularity verdict
    int rank = 0;
    int level_dim = 0;                      // n - rank
    bool submersion_at_samples = false;     // rank == k*g at every sample
    bool no_regular_points_certain = false; // k*g > n: cannot be a submersion anywhere
};
WeakRegularityReport weak_regularity_probe(const PolySymplecticStructure& P,
                                           const SymmetryModel& S,
                                           const std::vector<Vec>& level_points,
                                           const ToleranceConfig& cfg = {});

struct CocycleCheck {
    double max_gradient = 0.0;  // max |grad(xi^i_P J^alpha_j + c^l_{ij} J^alpha_l)|
    double max_value = 0.0;     // max |combination| itself
    bool pass = false;          // gradient below tolerance: cocycle constant
    bool equivariant = false;   // combination itself ~ 0
    double tol = 1e-6;
};
CocycleCheck infinitesimal_cocycle_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                         const std::vector<Vec>& points);

struct LemmaIdentities {
    bool isotropy_is_orbit_meet_level = false;  // T(G_mu p) = T(Gp) ∩ T(level)
    bool level_is_orbit_perp = false;           // T(level) = T(Gp)^{perp,k}
};
LemmaIdentities lemma_identities(const PolySymplecticStructure& P, const SymmetryModel& S,
                                 const Vec& x, const ToleranceConfig& cfg = {});

struct LevelSamplerConfig {
    int max_gauss_newton = 50;
    double gn_tol = 1e-10;
    double step = 0.25;
    int max_tries = 200;
    double domain_margin = 1e-3;
};

// Points on the level set through level.seed. Explicit momentum: random
// tangent steps projected back by Gauss-Newton on J(p) = mu. Differential-only
// momentum: short tangent walks (all downstream checks consume only dJ).
std::vector<Vec> sample_level_points(const PolySymplecticStructure& P, const SymmetryModel& S,
                                     const LevelSpec& level, int count, std::mt19937_64& rng,
                                     const DomainPredicate& domain = {},
                                     const LevelSamplerConfig& scfg = {},
                                     const ToleranceConfig& cfg = {});

// Uniform samples from a box, rejected against the domain predicate.
std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, int count, std::mt19937_64& rng,
                            const DomainPredicate& domain = {}, double margin = 1e-3);

}  // namespace psmech

#endif
