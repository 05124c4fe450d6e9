#ifndef PSMECH_GEOMETRY_HPP
#define PSMECH_GEOMETRY_HPP

// k-polysymplectic structures and omega-Hamiltonian vector fields.
//
// Conventions, fixed throughout the toolkit:
//   omega^alpha(u, v) = u^T A^alpha(x) v   with A skew,
//   iota_X omega = omega(X, .)             so (iota_X omega^alpha)_j = (A^alpha^T X)_j.
// A function family h^1..h^k is omega-Hamiltonian at x when the stacked system
// A^alpha(x)^T X = grad h^alpha(x), alpha = 1..k, has a solution; triviality of
// the joint kernel makes that solution unique.

#include "psmech/common.hpp"
#include "psmech/fields.hpp"
#include "psmech/subspace.hpp"

#include <vector>

namespace psmech {

struct PolySymplecticStructure {
    int n = 0;
    int k = 0;
    std::vector<MatrixFieldPtr> forms;  // coefficient matrices A^alpha(x)

    Mat form_value(int alpha, const Vec& x) const { return forms[(std::size_t)alpha]->value(x); }
    std::vector<Mat> form_values(const Vec& x) const {
        std::vector<Mat> a;
        a.reserve(forms.size());
        for (const auto& f : forms) a.push_back(f->value(x));
        return a;
    }
};

struct KFunction {
    int n = 0;
    int k = 0;
    std::vector<ScalarFieldPtr> components;  // h^1..h^k
};

struct StructurePointCheck {
    Vec point;
    bool skew = false;
    bool closed = false;
    bool joint_kernel_trivial = false;
    double skew_defect = 0.0;
    double closed_defect = 0.0;
    std::vector<int> kernel_dims;  // per alpha
    int joint_kernel_dim = 0;
};

struct StructureReport {
    std::vector<StructurePointCheck> points;
    bool pass = false;
    double skew_tol = 1e-10;
    double closed_tol = 1e-6;
};

StructureReport verify_structure(const PolySymplecticStructure& P, const std::vector<Vec>& points,
                                 const ToleranceConfig& cfg = {});

struct HamiltonianSolve {
    Vec X;                  // field value at the point
    double residual = 0.0;  // least-squares defect of the stacked system
    bool accepted = false;  // residual < 1e-8 * (1 + |grad h|)
};

HamiltonianSolve hamiltonian_field_at(const PolySymplecticStructure& P, const KFunction& h,
                                      const Vec& x);
// As above but throws ResidualTooLarge when the solve is rejected.
Vec hamiltonian_field_checked(const PolySymplecticStructure& P, const KFunction& h, const Vec& x);

// Checks closedness of iota_X omega^alpha at each point: with
// c_j(x) = (A^alpha^T X)_j, asserts d_i c_j - d_j c_i ~ 0.
struct FieldHamiltonianCheck {
    std::vector<bool> per_alpha;   // closed for this alpha at every point
    std::vector<double> defects;   // max |d_i c_j - d_j c_i| per alpha
    bool all() const {
        for (bool b : per_alpha)
            if (!b) return false;
        return true;
    }
};
FieldHamiltonianCheck is_hamiltonian_field(const PolySymplecticStructure& P, const VectorField& X,
                                           const std::vector<Vec>& points, double tol = 1e-6);

// Component alpha is omega^alpha(X_h, X_g)(x). Requires accepted solves.
Vec bracket_k(const PolySymplecticStructure& P, const KFunction& h, const KFunction& g,
              const Vec& x);

// Max componentwise defect of X_h f^alpha = omega^alpha(X_f, X_h) over the points.
double derivation_check(const PolySymplecticStructure& P, const KFunction& h, const KFunction& f,
                        const std::vector<Vec>& points);

}  // namespace psmech

#endif
