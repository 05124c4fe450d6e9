#ifndef PSMECH_REDUCTION_HPP
#define PSMECH_REDUCTION_HPP

// Pointwise checks of the sufficient conditions for k-polysymplectic
// Marsden-Weinstein reduction, the Blacker equality (necessary and sufficient
// for the reduced family to be k-polysymplectic), reduced-form rank reporting,
// and the tangency/invariance checks for reducing the dynamics.

#include "psmech/common.hpp"
#include "psmech/geometry.hpp"
#include "psmech/subspace.hpp"
#include "psmech/symmetry.hpp"

#include <vector>

namespace psmech {

// Per alpha: ker(T_p J_alpha) = T_p(level) + ker omega^alpha_p + T_p(G_{mu^alpha} p).
std::vector<bool> check_condition_A(const PolySymplecticStructure& P, const SymmetryModel& S,
                                    const Vec& x, const ToleranceConfig& cfg = {});

// T_p(G_mu p) = cap_alpha (ker omega^alpha_p + T_p(G_{mu^alpha} p)) ∩ T_p(level).
bool check_condition_B(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                       const ToleranceConfig& cfg = {});

// T_p(G_mu p) = (T_p(Gp)^{perp,k})^{perp,k} ∩ T_p(Gp)^{perp,k}.
bool check_blacker(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                   const ToleranceConfig& cfg = {});

struct ReducedStructure {
    int level_dim = 0;
    int isotropy_orbit_dim = 0;
    int reduced_dim = 0;             // level_dim - isotropy_orbit_dim
    std::vector<int> form_ranks;     // per alpha, on the quotient complement
    int joint_kernel_dim = 0;        // 0 iff the reduced family is k-polysymplectic
};
// Restricts each A^alpha to the level tangent and quotients by the joint
// isotropy orbit (Euclidean complement within the level tangent).
ReducedStructure reduced_structure_ranks(const PolySymplecticStructure& P, const SymmetryModel& S,
                                         const Vec& x, const ToleranceConfig& cfg = {});

struct ReductionPointReport {
    Vec point;
    std::vector<bool> condition_A;
    bool condition_B = false;
    bool blacker = false;
    ReducedStructure dims;
};

struct ReductionReport {
    std::vector<ReductionPointReport> points;
    std::vector<bool> condition_A;  // conjunction over points, per alpha
    bool condition_B = false;
    bool blacker = false;
    bool cocycle_warning = false;  // nonzero infinitesimal cocycle detected
    ToleranceConfig tolerances;
};

ReductionReport reduction_report(const PolySymplecticStructure& P, const SymmetryModel& S,
                                 const std::vector<Vec>& level_points,
                                 const ToleranceConfig& cfg = {});

struct DynamicsReductionCheck {
    double invariance_defect = 0.0;   // max |xi^i_P h^alpha|
    double tangency_defect = 0.0;     // max |dJ(X_h)|
    double commutation_defect = 0.0;  // max |[xi^i_P, X_h]|
    bool pass = false;
    double tol = 1e-6;
};
DynamicsReductionCheck dynamics_reduction_check(const PolySymplecticStructure& P,
                                                const SymmetryModel& S, const KFunction& h,
                                                const std::vector<Vec>& points);

}  // namespace psmech

#endif
