#include "psmech/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace psmech {

namespace {

// Orthonormal basis of the column space of M, rank decided by singular values
// >= rank_rel * sigma_max.
SubspaceBasis columnSpace(const Mat& M, const ToleranceConfig& cfg) {
    cfg.validate();
    SubspaceBasis out;
    out.n = static_cast<int>(M.rows());
    out.tol = cfg.rank_rel;
    if (M.cols() == 0 || M.norm() == 0.0) {
        out.B = Mat::Zero(M.rows(), 0);
        return out;
    }
    Eigen::BDCSVD<Mat> svd(M, Eigen::ComputeThinU);
    const double smax = svd.singularValues()(0);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) >= cfg.rank_rel * smax) ++r;
    out.B = svd.matrixU().leftCols(r);
    return out;
}

}  // namespace

SubspaceBasis span_of(const std::vector<Vec>& vectors, int n, const ToleranceConfig& cfg) {
    Mat M(n, static_cast<int>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != n)
            throw DimensionError("span: vector length does not match ambient dimension");
        M.col(static_cast<int>(j)) = vectors[j];
    }
    return columnSpace(M, cfg);
}

SubspaceBasis span_cols(const Mat& M, const ToleranceConfig& cfg) { return columnSpace(M, cfg); }

SubspaceBasis kernel_of_rows(const Mat& rows, const ToleranceConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(rows.cols());
    SubspaceBasis out;
    out.n = n;
    out.tol = cfg.rank_rel;
    if (rows.rows() == 0 || rows.norm() == 0.0) {
        out.B = Mat::Identity(n, n);
        return out;
    }
    Eigen::BDCSVD<Mat> svd(rows, Eigen::ComputeFullV);
    const double smax = svd.singularValues()(0);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) >= cfg.rank_rel * smax) ++r;
    out.B = svd.matrixV().rightCols(n - r);
    return out;
}

SubspaceBasis sum(const SubspaceBasis& U, const SubspaceBasis& V, const ToleranceConfig& cfg) {
    if (U.n != V.n) throw DimensionError("sum: ambient dimensions differ");
    Mat M(U.n, U.dim() + V.dim());
    M.leftCols(U.dim()) = U.B;
    M.rightCols(V.dim()) = V.B;
    return columnSpace(M, cfg);
}

SubspaceBasis intersect(const SubspaceBasis& U, const SubspaceBasis& V,
                        const ToleranceConfig& cfg) {
    if (U.n != V.n) throw DimensionError("intersect: ambient dimensions differ");
    if (U.dim() == 0 || V.dim() == 0) return SubspaceBasis{U.n, Mat::Zero(U.n, 0), cfg.rank_rel};
    // u = U a = V b: kernel of [U, -V] gives the coefficient pairs.
    Mat stacked(U.n, U.dim() + V.dim());
    stacked.leftCols(U.dim()) = U.B;
    stacked.rightCols(V.dim()) = -V.B;
    SubspaceBasis coef = kernel_of_rows(stacked, cfg);
    if (coef.dim() == 0) return SubspaceBasis{U.n, Mat::Zero(U.n, 0), cfg.rank_rel};
    Mat vecs = U.B * coef.B.topRows(U.dim());
    return columnSpace(vecs, cfg);
}

bool contains(const SubspaceBasis& U, const Vec& v, const ToleranceConfig& cfg) {
    if (v.size() != U.n) throw DimensionError("contains: vector length mismatch");
    const double nv = v.norm();
    if (nv == 0.0) return true;
    const Vec r = v - U.B * (U.B.transpose() * v);
    return r.norm() <= cfg.eq_tol * nv;
}

bool contains_subspace(const SubspaceBasis& U, const SubspaceBasis& V,
                       const ToleranceConfig& cfg) {
    if (U.n != V.n) throw DimensionError("contains_subspace: ambient dimensions differ");
    for (int j = 0; j < V.dim(); ++j)
        if (!contains(U, V.B.col(j), cfg)) return false;
    return true;
}

bool equals(const SubspaceBasis& U, const SubspaceBasis& V, const ToleranceConfig& cfg) {
    if (U.n != V.n) throw DimensionError("equals: ambient dimensions differ");
    if (U.dim() != V.dim()) return false;
    return contains_subspace(U, V, cfg) && contains_subspace(V, U, cfg);
}

SubspaceBasis k_orth_complement(const SubspaceBasis& W, const std::vector<Mat>& forms,
                                const ToleranceConfig& cfg) {
    const int n = W.n;
    Mat rows(W.dim() * static_cast<int>(forms.size()), n);
    int r = 0;
    for (const Mat& A : forms) {
        if (A.rows() != n || A.cols() != n)
            throw DimensionError("k_orth_complement: form size mismatch");
        const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
        if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
            throw InputError("k_orth_complement: form matrix is not skew-symmetric");
        for (int j = 0; j < W.dim(); ++j) rows.row(r++) = (A.transpose() * W.B.col(j)).transpose();
    }
    return kernel_of_rows(rows, cfg);
}

SubspaceBasis complement_within(const SubspaceBasis& U, const SubspaceBasis& E,
                                const ToleranceConfig& cfg) {
    if (U.n != E.n) throw DimensionError("complement_within: ambient dimensions differ");
    // Project E's basis off U and re-orthonormalize.
    Mat M = E.B;
    if (U.dim() > 0) M -= U.B * (U.B.transpose() * E.B);
    return columnSpace(M, cfg);
}

Mat restrict_bilinear(const Mat& H, const SubspaceBasis& S) {
    if (H.rows() != S.n || H.cols() != S.n)
        throw DimensionError("restrict_bilinear: matrix size mismatch");
    return S.B.transpose() * H * S.B;
}

std::string to_string(Definiteness d) {
    switch (d) {
        case Definiteness::PositiveDefinite: return "PositiveDefinite";
        case Definiteness::NegativeDefinite: return "NegativeDefinite";
        case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
        case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
        case Definiteness::Indefinite: return "Indefinite";
        case Definiteness::Zero: return "Zero";
    }
    return "?";
}

Definiteness definiteness(const Mat& H, double eig_tol) {
    if (H.rows() == 0) return Definiteness::Zero;
    const Mat Hs = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(Hs, Eigen::EigenvaluesOnly);
    const Vec ev = es.eigenvalues();
    const double cutoff = eig_tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    bool pos = false, neg = false, zero = false;
    for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) > cutoff) pos = true;
        else if (ev(i) < -cutoff) neg = true;
        else zero = true;
    }
    if (pos && neg) return Definiteness::Indefinite;
    if (pos) return zero ? Definiteness::PositiveSemidefinite : Definiteness::PositiveDefinite;
    if (neg) return zero ? Definiteness::NegativeSemidefinite : Definiteness::NegativeDefinite;
    return Definiteness::Zero;
}

}  // namespace psmech
