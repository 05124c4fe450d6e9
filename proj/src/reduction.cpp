#include "psmech/reduction.hpp"

namespace psmech {

std::vector<bool> check_condition_A(const PolySymplecticStructure& P, const SymmetryModel& S,
                                    const Vec& x, const ToleranceConfig& cfg) {
    std::vector<bool> out;
    const SubspaceBasis level = level_tangent(P, S, x, cfg);
    for (int a = 0; a < P.k; ++a) {
        const SubspaceBasis lhs = kernel_of_rows(momentum_rows_alpha(P, S, x, a), cfg);
        SubspaceBasis rhs = sum(level, kernel_of_rows(P.form_value(a, x), cfg), cfg);
        rhs = sum(rhs, isotropy_orbit_tangent(P, S, x, a, cfg), cfg);
        out.push_back(equals(lhs, rhs, cfg));
    }
    return out;
}

bool check_condition_B(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                       const ToleranceConfig& cfg) {
    const SubspaceBasis lhs = isotropy_orbit_tangent(P, S, x, kJointIsotropy, cfg);
    SubspaceBasis meet;
    for (int a = 0; a < P.k; ++a) {
        SubspaceBasis term =
            sum(kernel_of_rows(P.form_value(a, x), cfg), isotropy_orbit_tangent(P, S, x, a, cfg), cfg);
        meet = (a == 0) ? term : intersect(meet, term, cfg);
    }
    meet = intersect(meet, level_tangent(P, S, x, cfg), cfg);
    return equals(lhs, meet, cfg);
}

bool check_blacker(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                   const ToleranceConfig& cfg) {
    const std::vector<Mat> forms = P.form_values(x);
    const SubspaceBasis orbit = orbit_tangent(S, x, cfg);
    const SubspaceBasis perp = k_orth_complement(orbit, forms, cfg);
    const SubspaceBasis perp2 = k_orth_complement(perp, forms, cfg);
    const SubspaceBasis lhs = isotropy_orbit_tangent(P, S, x, kJointIsotropy, cfg);
    return equals(lhs, intersect(perp2, perp, cfg), cfg);
}

ReducedStructure reduced_structure_ranks(const PolySymplecticStructure& P, const SymmetryModel& S,
                                         const Vec& x, const ToleranceConfig& cfg) {
    ReducedStructure out;
    const SubspaceBasis level = level_tangent(P, S, x, cfg);
    const SubspaceBasis orbit = isotropy_orbit_tangent(P, S, x, kJointIsotropy, cfg);
    out.level_dim = level.dim();
    out.isotropy_orbit_dim = orbit.dim();
    // Euclidean complement of the orbit inside the level tangent stands in for
    // the quotient tangent; the reduced forms are well defined there.
    const SubspaceBasis C = complement_within(orbit, level, cfg);
    out.reduced_dim = C.dim();
    Mat stacked(P.k * C.dim(), C.dim());
    for (int a = 0; a < P.k; ++a) {
        const Mat R = C.B.transpose() * P.form_value(a, x) * C.B;
        stacked.middleRows(a * C.dim(), C.dim()) = R.transpose();
        out.form_ranks.push_back(C.dim() - kernel_of_rows(R, cfg).dim());
    }
    out.joint_kernel_dim = C.dim() == 0 ? 0 : kernel_of_rows(stacked, cfg).dim();
    return out;
}

ReductionReport reduction_report(const PolySymplecticStructure& P, const SymmetryModel& S,
                                 const std::vector<Vec>& level_points,
                                 const ToleranceConfig& cfg) {
    if (level_points.empty()) throw InputError("reduction_report: no sample points");
    ReductionReport rep;
    rep.tolerances = cfg;
    rep.condition_A.assign((std::size_t)P.k, true);
    rep.condition_B = true;
    rep.blacker = true;
    for (const Vec& x : level_points) {
        ReductionPointReport pr;
        pr.point = x;
        pr.condition_A = check_condition_A(P, S, x, cfg);
        pr.condition_B = check_condition_B(P, S, x, cfg);
        pr.blacker = check_blacker(P, S, x, cfg);
        pr.dims = reduced_structure_ranks(P, S, x, cfg);
        for (int a = 0; a < P.k; ++a)
            rep.condition_A[(std::size_t)a] =
                rep.condition_A[(std::size_t)a] && pr.condition_A[(std::size_t)a];
        rep.condition_B = rep.condition_B && pr.condition_B;
        rep.blacker = rep.blacker && pr.blacker;
        rep.points.push_back(std::move(pr));
    }
    if (S.structure_constants && S.explicit_momentum()) {
        const CocycleCheck cc = infinitesimal_cocycle_check(P, S, level_points);
        rep.cocycle_warning = cc.pass && !cc.equivariant;
    }
    return rep;
}

DynamicsReductionCheck dynamics_reduction_check(const PolySymplecticStructure& P,
                                                const SymmetryModel& S, const KFunction& h,
                                                const std::vector<Vec>& points) {
    DynamicsReductionCheck out;
    for (const Vec& x : points) {
        const Vec Xh = hamiltonian_field_checked(P, h, x);
        const Mat G = generator_matrix(S, x);
        for (int a = 0; a < P.k; ++a) {
            const Vec gh = h.components[(std::size_t)a]->gradient(x);
            out.invariance_defect =
                std::max(out.invariance_defect, (G.transpose() * gh).cwiseAbs().maxCoeff());
        }
        if (S.momentum.mode != Momentum::Mode::None) {
            const Vec tang = momentum_rows(P, S, x) * Xh;
            if (tang.size() > 0)
                out.tangency_defect = std::max(out.tangency_defect, tang.cwiseAbs().maxCoeff());
        }
        // [xi_P, X_h] with the Jacobian of the implicit solve by central
        // differences; the solve itself is exact at each evaluation point.
        const double step = 1e-6 * (1.0 + x.norm());
        Mat Jh(P.n, P.n);
        for (int m = 0; m < P.n; ++m) {
            Vec xp = x, xm = x;
            xp(m) += step;
            xm(m) -= step;
            Jh.col(m) = (hamiltonian_field_checked(P, h, xp) -
                         hamiltonian_field_checked(P, h, xm)) /
                        (2.0 * step);
        }
        for (int i = 0; i < S.g_dim; ++i) {
            const Vec xi = S.generators[(std::size_t)i]->value(x);
            const Mat dxi = S.generators[(std::size_t)i]->jacobian(x);
            const Vec comm = Jh * xi - dxi * Xh;
            out.commutation_defect = std::max(out.commutation_defect, comm.cwiseAbs().maxCoeff());
        }
    }
    out.pass = out.invariance_defect < out.tol && out.tangency_defect < out.tol &&
               out.commutation_defect < out.tol;
    return out;
}

}  // namespace psmech
