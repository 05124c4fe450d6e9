#include "psmech/symmetry.hpp"

#include <Eigen/SVD>

namespace psmech {

namespace {

int momentumCount(const PolySymplecticStructure& P, const SymmetryModel& S) {
    return P.k * S.g_dim;
}

int rankOf(const Mat& M, const ToleranceConfig& cfg) {
    if (M.rows() == 0 || M.cols() == 0 || M.norm() == 0.0) return 0;
    Eigen::BDCSVD<Mat> svd(M);
    const double smax = svd.singularValues()(0);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) >= cfg.rank_rel * smax) ++r;
    return r;
}

}  // namespace

Mat generator_matrix(const SymmetryModel& S, const Vec& x) {
    Mat G(x.size(), S.g_dim);
    for (int i = 0; i < S.g_dim; ++i) G.col(i) = S.generators[(std::size_t)i]->value(x);
    return G;
}

Mat momentum_rows_alpha(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                        int alpha) {
    Mat rows(S.g_dim, P.n);
    if (S.explicit_momentum()) {
        for (int i = 0; i < S.g_dim; ++i)
            rows.row(i) = S.momentum.J[(std::size_t)(alpha * S.g_dim + i)]->gradient(x).transpose();
    } else if (S.momentum.mode == Momentum::Mode::Differential) {
        const Mat At = P.form_value(alpha, x).transpose();
        for (int i = 0; i < S.g_dim; ++i)
            rows.row(i) = (At * S.generators[(std::size_t)i]->value(x)).transpose();
    } else {
        throw InputError("momentum_rows: the symmetry model has no momentum map");
    }
    return rows;
}

Mat momentum_rows(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x) {
    Mat rows(momentumCount(P, S), P.n);
    for (int a = 0; a < P.k; ++a)
        rows.middleRows(a * S.g_dim, S.g_dim) = momentum_rows_alpha(P, S, x, a);
    return rows;
}

Vec momentum_value(const SymmetryModel& S, const Vec& x) {
    if (!S.explicit_momentum())
        throw InputError("momentum_value: momentum map is differential-only");
    Vec v(static_cast<int>(S.momentum.J.size()));
    for (std::size_t i = 0; i < S.momentum.J.size(); ++i)
        v(static_cast<int>(i)) = S.momentum.J[i]->value(x);
    return v;
}

std::vector<Mat> momentum_hessians(const PolySymplecticStructure& P, const SymmetryModel& S,
                                   const Vec& x) {
    std::vector<Mat> out;
    out.reserve((std::size_t)momentumCount(P, S));
    if (S.explicit_momentum()) {
        for (const auto& J : S.momentum.J) out.push_back(J->hessian(x));
        return out;
    }
    for (int a = 0; a < P.k; ++a) {
        const Mat A = P.form_value(a, x);
        const std::vector<Mat> dA = P.forms[(std::size_t)a]->derivative(x);
        for (int i = 0; i < S.g_dim; ++i) {
            const Vec xi = S.generators[(std::size_t)i]->value(x);
            const Mat dxi = S.generators[(std::size_t)i]->jacobian(x);
            // row_j = sum_m A_mj xi_m; d_l row_j then symmetrized.
            Mat B(P.n, P.n);
            for (int l = 0; l < P.n; ++l)
                for (int j = 0; j < P.n; ++j) {
                    double v = 0.0;
                    for (int m = 0; m < P.n; ++m)
                        v += dA[(std::size_t)l](m, j) * xi(m) + A(m, j) * dxi(m, l);
                    B(l, j) = v;
                }
            out.push_back(0.5 * (B + B.transpose()));
        }
    }
    return out;
}

MomentumCheck verify_momentum(const PolySymplecticStructure& P, const SymmetryModel& S,
                              const std::vector<Vec>& points) {
    MomentumCheck out;
    out.defects = Mat::Zero(P.k, S.g_dim);
    if (S.explicit_momentum()) {
        for (const Vec& x : points) {
            for (int a = 0; a < P.k; ++a) {
                const Mat At = P.form_value(a, x).transpose();
                for (int i = 0; i < S.g_dim; ++i) {
                    const Vec lhs = At * S.generators[(std::size_t)i]->value(x);
                    const Vec rhs =
                        S.momentum.J[(std::size_t)(a * S.g_dim + i)]->gradient(x);
                    out.defects(a, i) =
                        std::max(out.defects(a, i), (lhs - rhs).cwiseAbs().maxCoeff());
                }
            }
        }
    } else {
        // Closedness of each iota_{xi^i_P} omega^alpha.
        for (const Vec& x : points)
            for (int a = 0; a < P.k; ++a) {
                const Mat A = P.form_value(a, x);
                const std::vector<Mat> dA = P.forms[(std::size_t)a]->derivative(x);
                for (int i = 0; i < S.g_dim; ++i) {
                    const Vec xi = S.generators[(std::size_t)i]->value(x);
                    const Mat dxi = S.generators[(std::size_t)i]->jacobian(x);
                    Mat B(P.n, P.n);
                    for (int l = 0; l < P.n; ++l)
                        for (int j = 0; j < P.n; ++j) {
                            double v = 0.0;
                            for (int m = 0; m < P.n; ++m)
                                v += dA[(std::size_t)l](m, j) * xi(m) + A(m, j) * dxi(m, l);
                            B(l, j) = v;
                        }
                    out.defects(a, i) = std::max(out.defects(a, i),
                                                 (B - B.transpose()).cwiseAbs().maxCoeff());
                }
            }
    }
    out.pass = out.defects.size() == 0 || out.defects.maxCoeff() < out.tol;
    return out;
}

double bracket_closure_check(const SymmetryModel& S, const std::vector<Vec>& points) {
    if (!S.structure_constants) throw InputError("bracket_closure_check: no structure constants");
    const auto& c = *S.structure_constants;
    double defect = 0.0;
    for (const Vec& x : points) {
        const Mat G = generator_matrix(S, x);
        std::vector<Mat> jac;
        jac.reserve((std::size_t)S.g_dim);
        for (int i = 0; i < S.g_dim; ++i) jac.push_back(S.generators[(std::size_t)i]->jacobian(x));
        for (int i = 0; i < S.g_dim; ++i)
            for (int j = 0; j < S.g_dim; ++j) {
                Vec br = jac[(std::size_t)j] * G.col(i) - jac[(std::size_t)i] * G.col(j);
                for (int l = 0; l < S.g_dim; ++l) br += c[(std::size_t)l](i, j) * G.col(l);
                defect = std::max(defect, br.cwiseAbs().maxCoeff());
            }
    }
    return defect;
}

double invariance_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                        const std::vector<Vec>& points) {
    // (L_xi A)_ij = sum_m xi_m dA_m(i,j) + A_mj dxi_m/dx_i + A_im dxi_m/dx_j.
    double defect = 0.0;
    for (const Vec& x : points) {
        for (int a = 0; a < P.k; ++a) {
            const Mat A = P.form_value(a, x);
            const std::vector<Mat> dA = P.forms[(std::size_t)a]->derivative(x);
            for (int g = 0; g < S.g_dim; ++g) {
                const Vec xi = S.generators[(std::size_t)g]->value(x);
                const Mat dxi = S.generators[(std::size_t)g]->jacobian(x);
                Mat lie = Mat::Zero(P.n, P.n);
                for (int m = 0; m < P.n; ++m) lie += xi(m) * dA[(std::size_t)m];
                lie += dxi.transpose() * A + A * dxi;
                defect = std::max(defect, lie.cwiseAbs().maxCoeff());
            }
        }
    }
    return defect;
}

SubspaceBasis orbit_tangent(const SymmetryModel& S, const Vec& x, const ToleranceConfig& cfg) {
    if (S.g_dim == 0) return SubspaceBasis{(int)x.size(), Mat::Zero(x.size(), 0), cfg.rank_rel};
    return span_cols(generator_matrix(S, x), cfg);
}

SubspaceBasis level_tangent(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& x,
                            const ToleranceConfig& cfg) {
    if (S.g_dim == 0) return SubspaceBasis{P.n, Mat::Identity(P.n, P.n), cfg.rank_rel};
    return kernel_of_rows(momentum_rows(P, S, x), cfg);
}

SubspaceBasis isotropy_algebra(const PolySymplecticStructure& P, const SymmetryModel& S,
                               const Vec& x, int alpha, const ToleranceConfig& cfg,
                               const std::optional<std::vector<int>>& override_generators) {
    if (S.g_dim == 0) return SubspaceBasis{0, Mat::Zero(0, 0), cfg.rank_rel};
    if (override_generators) {
        Mat B = Mat::Zero(S.g_dim, (int)override_generators->size());
        for (std::size_t j = 0; j < override_generators->size(); ++j)
            B((*override_generators)[j], (int)j) = 1.0;
        return span_cols(B, cfg);
    }
    const Mat G = generator_matrix(S, x);
    auto levelBlock = [&](int a) { return momentum_rows_alpha(P, S, x, a) * G; };  // g x g
    if (alpha != kJointIsotropy) return kernel_of_rows(levelBlock(alpha), cfg);
    Mat M(P.k * S.g_dim, S.g_dim);
    for (int a = 0; a < P.k; ++a) M.middleRows(a * S.g_dim, S.g_dim) = levelBlock(a);
    return kernel_of_rows(M, cfg);
}

SubspaceBasis isotropy_orbit_tangent(const PolySymplecticStructure& P, const SymmetryModel& S,
                                     const Vec& x, int alpha, const ToleranceConfig& cfg,
                                     const std::optional<std::vector<int>>& override_generators) {
    if (S.g_dim == 0) return SubspaceBasis{P.n, Mat::Zero(P.n, 0), cfg.rank_rel};
    const SubspaceBasis lambda = isotropy_algebra(P, S, x, alpha, cfg, override_generators);
    if (lambda.dim() == 0) return SubspaceBasis{P.n, Mat::Zero(P.n, 0), cfg.rank_rel};
    return span_cols(generator_matrix(S, x) * lambda.B, cfg);
}

WeakRegularityReport weak_regularity_probe(const PolySymplecticStructure& P,
                                           const SymmetryModel& S,
                                           const std::vector<Vec>& level_points,
                                           const ToleranceConfig& cfg) {
    WeakRegularityReport rep;
    if (level_points.empty()) throw InputError("weak_regularity_probe: no sample points");
    for (const Vec& x : level_points) rep.ranks.push_back(rankOf(momentum_rows(P, S, x), cfg));
    rep.rank = rep.ranks.front();
    rep.constant_rank = true;
    for (int r : rep.ranks) rep.constant_rank = rep.constant_rank && (r == rep.rank);
    rep.level_dim = P.n - rep.rank;
    rep.submersion_at_samples = rep.constant_rank && rep.rank == momentumCount(P, S);
    rep.no_regular_points_certain = momentumCount(P, S) > P.n;
    return rep;
}

CocycleCheck infinitesimal_cocycle_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                         const std::vector<Vec>& points) {
    if (!S.structure_constants)
        throw InputError("infinitesimal_cocycle_check: structure constants required");
    if (!S.explicit_momentum())
        throw InputError("infinitesimal_cocycle_check: explicit momentum required");
    const auto& c = *S.structure_constants;
    CocycleCheck out;
    for (const Vec& x : points) {
        const Mat rows = momentum_rows(P, S, x);  // gradients of J^alpha_j
        const Vec vals = momentum_value(S, x);
        for (int a = 0; a < P.k; ++a)
            for (int i = 0; i < S.g_dim; ++i) {
                const Vec xi = S.generators[(std::size_t)i]->value(x);
                const Mat dxi = S.generators[(std::size_t)i]->jacobian(x);
                for (int j = 0; j < S.g_dim; ++j) {
                    const int jj = a * S.g_dim + j;
                    // grad(xi^i_P J^alpha_j) = H_J xi + dxi^T grad J.
                    Vec grad = S.momentum.J[(std::size_t)jj]->hessian(x) * xi +
                               dxi.transpose() * rows.row(jj).transpose();
                    double comb = xi.dot(rows.row(jj).transpose());
                    for (int l = 0; l < S.g_dim; ++l) {
                        grad += c[(std::size_t)l](i, j) * rows.row(a * S.g_dim + l).transpose();
                        comb += c[(std::size_t)l](i, j) * vals(a * S.g_dim + l);
                    }
                    out.max_gradient = std::max(out.max_gradient, grad.cwiseAbs().maxCoeff());
                    out.max_value = std::max(out.max_value, std::abs(comb));
                }
            }
    }
    out.pass = out.max_gradient < out.tol;
    out.equivariant = out.pass && out.max_value < out.tol;
    return out;
}

LemmaIdentities lemma_identities(const PolySymplecticStructure& P, const SymmetryModel& S,
                                 const Vec& x, const ToleranceConfig& cfg) {
    LemmaIdentities out;
    const SubspaceBasis orbit = orbit_tangent(S, x, cfg);
    const SubspaceBasis level = level_tangent(P, S, x, cfg);
    const SubspaceBasis iso = isotropy_orbit_tangent(P, S, x, kJointIsotropy, cfg);
    out.isotropy_is_orbit_meet_level = equals(iso, intersect(orbit, level, cfg), cfg);
    out.level_is_orbit_perp = equals(level, k_orth_complement(orbit, P.form_values(x), cfg), cfg);
    return out;
}

std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, int count, std::mt19937_64& rng,
                            const DomainPredicate& domain, double margin) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec> pts;
    int guard = 0;
    while ((int)pts.size() < count) {
        Vec x(lo.size());
        for (int i = 0; i < lo.size(); ++i) x(i) = lo(i) + (hi(i) - lo(i)) * u(rng);
        if (domain.satisfied(x, margin)) pts.push_back(std::move(x));
        if (++guard > 1000 * count)
            throw Error("sample_box: could not find points satisfying the domain predicate");
    }
    return pts;
}

namespace {

// Gauss-Newton projection onto {J = mu}; min-norm steps via SVD handle the
// rank-deficient (weakly regular) case.
bool projectToLevel(const PolySymplecticStructure& P, const SymmetryModel& S, const Vec& mu,
                    Vec& x, const LevelSamplerConfig& scfg) {
    for (int it = 0; it < scfg.max_gauss_newton; ++it) {
        const Vec r = momentum_value(S, x) - mu;
        if (r.cwiseAbs().maxCoeff() < scfg.gn_tol) return true;
        const Mat Jrows = momentum_rows(P, S, x);
        Eigen::BDCSVD<Mat> svd(Jrows, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        x -= svd.solve(r);
    }
    return momentum_value(S, x).size() == 0 ||
           (momentum_value(S, x) - mu).cwiseAbs().maxCoeff() < scfg.gn_tol;
}

}  // namespace

std::vector<Vec> sample_level_points(const PolySymplecticStructure& P, const SymmetryModel& S,
                                     const LevelSpec& level, int count, std::mt19937_64& rng,
                                     const DomainPredicate& domain, const LevelSamplerConfig& scfg,
                                     const ToleranceConfig& cfg) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vec> pts;
    pts.push_back(level.seed);
    const bool expl = S.explicit_momentum();
    int tries = 0;
    while ((int)pts.size() < count) {
        if (++tries > scfg.max_tries)
            throw Error("sample_level_points: sampler failed to stay on the level set");
        const SubspaceBasis T = level_tangent(P, S, level.seed, cfg);
        Vec coeff(T.dim());
        for (int i = 0; i < T.dim(); ++i) coeff(i) = gauss(rng);
        if (coeff.size() > 0 && coeff.norm() > 0) coeff *= scfg.step / coeff.norm();
        Vec x = level.seed;
        if (expl) {
            x += T.B * coeff;
            if (!projectToLevel(P, S, level.mu, x, scfg)) continue;
        } else {
            // Short tangent walk: several substeps re-projected onto the
            // current level tangent; checks downstream use only dJ at x.
            const int substeps = 8;
            Vec dir = T.B * coeff;
            for (int s = 0; s < substeps; ++s) {
                const SubspaceBasis Tc = level_tangent(P, S, x, cfg);
                const Vec v = Tc.B * (Tc.B.transpose() * dir);
                x += v / substeps;
                if (!domain.satisfied(x, scfg.domain_margin)) break;
            }
        }
        if (!domain.satisfied(x, scfg.domain_margin)) continue;
        pts.push_back(std::move(x));
    }
    return pts;
}

}  // namespace psmech
