#include "psmech/equilibrium.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

namespace psmech {

namespace {

Vec residualF(const PolySymplecticStructure& P, const SymmetryModel& S, const KFunction& h,
              const Vec& z, const Vec& xi) {
    const HamiltonianSolve s = hamiltonian_field_at(P, h, z);
    return s.X - generator_matrix(S, z) * xi;
}

// Hessian of h^alpha_xi = h^alpha - sum_i xi_i (J^alpha_i - mu),
// using the momentum Hessian surrogate in differential-only mode.
Mat hxiHessian(const PolySymplecticStructure& P, const SymmetryModel& S, const KFunction& h,
               const Vec& z, const Vec& xi, int alpha,
               const std::vector<Mat>& momentumHess) {
    Mat H = h.components[(std::size_t)alpha]->hessian(z);
    for (int i = 0; i < S.g_dim; ++i)
        H -= xi(i) * momentumHess[(std::size_t)(alpha * S.g_dim + i)];
    return H;
}

}  // namespace

std::vector<RelativeEquilibrium> find_relative_equilibria(const PolySymplecticStructure& P,
                                                          const SymmetryModel& S,
                                                          const KFunction& h,
                                                          const std::vector<Vec>& seeds,
                                                          const EquilibriumSearchConfig& cfg,
                                                          const ToleranceConfig& tol) {
    std::vector<RelativeEquilibrium> found;
    const int n = P.n, g = S.g_dim;
    for (const Vec& seed : seeds) {
        Vec z = seed;
        // Initial multiplier: least-squares fit of the generators to X_h.
        Vec xi = Vec::Zero(g);
        {
            const HamiltonianSolve s = hamiltonian_field_at(P, h, z);
            const Mat G = generator_matrix(S, z);
            if (g > 0) xi = G.colPivHouseholderQr().solve(s.X);
        }
        double lambda = cfg.lambda0;
        bool converged = false;
        Vec F = residualF(P, S, h, z, xi);
        Mat J(n, n + g);
        for (int it = 0; it < cfg.max_iterations; ++it) {
            const double scale = 1.0 + hamiltonian_field_at(P, h, z).X.norm();
            if (F.norm() < 1e-9 * scale) {
                converged = true;
                break;
            }
            // Central-difference Jacobian in (z, xi). The xi block is exact.
            const double step = cfg.fd_step * (1.0 + z.norm());
            for (int m = 0; m < n; ++m) {
                Vec zp = z, zm = z;
                zp(m) += step;
                zm(m) -= step;
                J.col(m) = (residualF(P, S, h, zp, xi) - residualF(P, S, h, zm, xi)) / (2 * step);
            }
            J.rightCols(g) = -generator_matrix(S, z);
            const Mat JtJ = J.transpose() * J;
            const Vec Jtf = J.transpose() * F;
            bool stepped = false;
            for (int attempt = 0; attempt < 12 && !stepped; ++attempt) {
                Mat A = JtJ;
                A.diagonal().array() += lambda;
                const Vec delta = A.ldlt().solve(-Jtf);
                Vec z2 = z + delta.head(n);
                Vec xi2 = xi + delta.tail(g);
                Vec F2;
                try {
                    F2 = residualF(P, S, h, z2, xi2);
                } catch (const DomainError&) {
                    lambda *= 4.0;
                    continue;
                }
                if (F2.norm() < F.norm()) {
                    z = std::move(z2);
                    xi = std::move(xi2);
                    F = std::move(F2);
                    lambda *= 0.5;
                    stepped = true;
                } else {
                    lambda *= 4.0;
                }
            }
            if (!stepped) break;  // stalled; NoConvergence for this seed
        }
        const double scale = 1.0 + hamiltonian_field_at(P, h, z).X.norm();
        if (!converged && F.norm() >= 1e-9 * scale) continue;

        RelativeEquilibrium eq;
        eq.z = z;
        eq.xi = xi;
        eq.residual = F.norm();
        eq.accepted = eq.residual < 1e-9 * scale;
        if (S.explicit_momentum()) eq.mu_e = momentum_value(S, z);
        if (S.momentum.mode != Momentum::Mode::None && g > 0) {
            const SubspaceBasis iso = isotropy_algebra(P, S, z, kJointIsotropy, tol);
            eq.xi_in_isotropy = contains(iso, xi, tol);
        } else {
            eq.xi_in_isotropy = true;
        }
        {
            const double step = cfg.fd_step * (1.0 + z.norm());
            for (int m = 0; m < n; ++m) {
                Vec zp = z, zm = z;
                zp(m) += step;
                zm(m) -= step;
                J.col(m) = (residualF(P, S, h, zp, xi) - residualF(P, S, h, zm, xi)) / (2 * step);
            }
            J.rightCols(g) = -generator_matrix(S, z);
            Eigen::BDCSVD<Mat> svd(J);
            const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
            int r = 0;
            for (int i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) >= 1e-6 * std::max(smax, 1.0)) ++r;
            eq.family_nullity = n + g - r;
        }
        bool duplicate = false;
        for (const auto& other : found) {
            if ((other.z - eq.z).norm() + (other.xi - eq.xi).norm() < cfg.dedup_radius)
                duplicate = true;
        }
        if (!duplicate) found.push_back(std::move(eq));
    }
    return found;
}

Vec h_xi_gradient_norms(const PolySymplecticStructure& P, const SymmetryModel& S,
                        const KFunction& h, const Vec& z, const Vec& xi) {
    Vec out(P.k);
    for (int a = 0; a < P.k; ++a) {
        Vec grad = h.components[(std::size_t)a]->gradient(z);
        if (S.g_dim > 0)
            grad -= momentum_rows_alpha(P, S, z, a).transpose() * xi;
        out(a) = grad.norm();
    }
    return out;
}

std::pair<Mat, SubspaceBasis> second_variation(const PolySymplecticStructure& P,
                                               const SymmetryModel& S, const KFunction& h,
                                               const RelativeEquilibrium& eq, int alpha,
                                               const ToleranceConfig& cfg) {
    const SubspaceBasis level = level_tangent(P, S, eq.z, cfg);
    const std::vector<Mat> mh = momentum_hessians(P, S, eq.z);
    const Mat H = hxiHessian(P, S, h, eq.z, eq.xi, alpha, mh);
    return {restrict_bilinear(H, level), level};
}

double gauge_degeneracy_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                              const KFunction& h, const RelativeEquilibrium& eq,
                              const ToleranceConfig& cfg) {
    const SubspaceBasis level = level_tangent(P, S, eq.z, cfg);
    const SubspaceBasis iso = isotropy_orbit_tangent(P, S, eq.z, kJointIsotropy, cfg);
    const std::vector<Mat> mh = momentum_hessians(P, S, eq.z);
    double worst = 0.0;
    for (int a = 0; a < P.k; ++a) {
        const Mat H = hxiHessian(P, S, h, eq.z, eq.xi, a, mh);
        if (iso.dim() > 0 && level.dim() > 0)
            worst = std::max(worst, (iso.B.transpose() * H * level.B).cwiseAbs().maxCoeff());
        const SubspaceBasis K =
            intersect(kernel_of_rows(P.form_value(a, eq.z), cfg), level, cfg);
        if (K.dim() > 0 && level.dim() > 0)
            worst = std::max(worst, (K.B.transpose() * H * level.B).cwiseAbs().maxCoeff());
    }
    return worst;
}

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::FormallyStable: return "FormallyStable";
        case StabilityClass::FormallyStableNegative: return "FormallyStableNegative";
        case StabilityClass::NotFormallyStable: return "NotFormallyStable";
        case StabilityClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

StabilityReport classify_formal_stability(const PolySymplecticStructure& P, const SymmetryModel& S,
                                          const KFunction& h, const RelativeEquilibrium& eq,
                                          const ToleranceConfig& cfg) {
    StabilityReport rep;
    rep.eq = eq;
    rep.tolerances = cfg;
    const SubspaceBasis level = level_tangent(P, S, eq.z, cfg);
    const SubspaceBasis iso = isotropy_orbit_tangent(P, S, eq.z, kJointIsotropy, cfg);
    rep.level_dim = level.dim();
    const std::vector<Mat> mh = momentum_hessians(P, S, eq.z);

    SubspaceBasis span_sum = iso;
    int n_pos = 0, n_neg = 0, n_vacuous = 0, n_semi = 0, n_bad = 0;
    for (int a = 0; a < P.k; ++a) {
        const SubspaceBasis K =
            intersect(kernel_of_rows(P.form_value(a, eq.z), cfg), level, cfg);
        const SubspaceBasis D = sum(iso, K, cfg);
        const SubspaceBasis Sa = complement_within(D, level, cfg);
        span_sum = sum(span_sum, Sa, cfg);

        const Mat H = hxiHessian(P, S, h, eq.z, eq.xi, a, mh);
        const Mat R = Sa.dim() > 0 ? Mat(Sa.B.transpose() * H * Sa.B) : Mat(0, 0);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (R + R.transpose()),
                                              Eigen::EigenvaluesOnly);
        rep.spectra.push_back(Sa.dim() > 0 ? Vec(es.eigenvalues()) : Vec(0));
        const Definiteness d = definiteness(R, cfg.eig_tol);
        rep.verdicts.push_back(d);
        rep.supplements.push_back(Sa);

        if (Sa.dim() == 0) {
            ++n_vacuous;  // nothing to test on this alpha
        } else if (d == Definiteness::PositiveDefinite) {
            ++n_pos;
        } else if (d == Definiteness::NegativeDefinite) {
            ++n_neg;
        } else if (d == Definiteness::Indefinite || d == Definiteness::Zero) {
            ++n_bad;
        } else {
            ++n_semi;  // semidefinite with kernel: a supplement change could matter
        }
    }
    rep.spanning_ok = equals(span_sum, level, cfg);

    if (n_bad > 0) {
        rep.classification = StabilityClass::NotFormallyStable;
    } else if (n_semi > 0 || !rep.spanning_ok) {
        rep.classification = StabilityClass::Inconclusive;
    } else if (n_pos > 0 && n_neg > 0) {
        rep.classification = StabilityClass::Inconclusive;  // mixed definite signs
    } else if (n_neg > 0) {
        rep.classification = StabilityClass::FormallyStableNegative;
    } else {
        rep.classification = StabilityClass::FormallyStable;
    }
    return rep;
}

Definiteness reduced_minimum_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                   const KFunction& h, const RelativeEquilibrium& eq,
                                   const ToleranceConfig& cfg) {
    const SubspaceBasis level = level_tangent(P, S, eq.z, cfg);
    const SubspaceBasis iso = isotropy_orbit_tangent(P, S, eq.z, kJointIsotropy, cfg);
    const SubspaceBasis C = complement_within(iso, level, cfg);
    const std::vector<Mat> mh = momentum_hessians(P, S, eq.z);
    Mat H = Mat::Zero(P.n, P.n);
    for (int a = 0; a < P.k; ++a) H += hxiHessian(P, S, h, eq.z, eq.xi, a, mh);
    return definiteness(restrict_bilinear(H, C), cfg.eig_tol);
}

}  // namespace psmech
