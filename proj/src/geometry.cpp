#include "psmech/geometry.hpp"

#include <Eigen/QR>

namespace psmech {

namespace {

Vec stackedGradients(const KFunction& h, const Vec& x) {
    Vec g(h.k * h.n);
    for (int a = 0; a < h.k; ++a)
        g.segment(a * h.n, h.n) = h.components[(std::size_t)a]->gradient(x);
    return g;
}

Mat stackedFormsT(const PolySymplecticStructure& P, const Vec& x) {
    Mat M(P.k * P.n, P.n);
    for (int a = 0; a < P.k; ++a) M.middleRows(a * P.n, P.n) = P.form_value(a, x).transpose();
    return M;
}

}  // namespace

StructureReport verify_structure(const PolySymplecticStructure& P, const std::vector<Vec>& points,
                                 const ToleranceConfig& cfg) {
    if (points.empty()) throw InputError("verify_structure: empty sample set");
    StructureReport rep;
    rep.pass = true;
    for (const Vec& x : points) {
        StructurePointCheck c;
        c.point = x;
        std::vector<Mat> A = P.form_values(x);

        double skew = 0.0, scale = 1.0;
        for (const Mat& a : A) {
            scale = std::max(scale, a.cwiseAbs().maxCoeff());
            skew = std::max(skew, (a + a.transpose()).cwiseAbs().maxCoeff());
        }
        c.skew_defect = skew / scale;
        c.skew = c.skew_defect < rep.skew_tol;

        // Cyclic coefficients of d omega^alpha: d_i A_jl + d_j A_li + d_l A_ij.
        double closed = 0.0;
        for (int a = 0; a < P.k; ++a) {
            std::vector<Mat> dA = P.forms[(std::size_t)a]->derivative(x);
            for (int i = 0; i < P.n; ++i)
                for (int j = i + 1; j < P.n; ++j)
                    for (int l = j + 1; l < P.n; ++l) {
                        const double v = dA[(std::size_t)i](j, l) + dA[(std::size_t)j](l, i) +
                                         dA[(std::size_t)l](i, j);
                        closed = std::max(closed, std::abs(v));
                    }
        }
        c.closed_defect = closed / scale;
        c.closed = c.closed_defect < rep.closed_tol;

        for (const Mat& a : A) c.kernel_dims.push_back(kernel_of_rows(a, cfg).dim());
        c.joint_kernel_dim = kernel_of_rows(stackedFormsT(P, x), cfg).dim();
        c.joint_kernel_trivial = c.joint_kernel_dim == 0;

        rep.pass = rep.pass && c.skew && c.closed && c.joint_kernel_trivial;
        rep.points.push_back(std::move(c));
    }
    return rep;
}

HamiltonianSolve hamiltonian_field_at(const PolySymplecticStructure& P, const KFunction& h,
                                      const Vec& x) {
    if (h.n != P.n || h.k != P.k)
        throw DimensionError("hamiltonian_field_at: function/structure dimensions differ");
    const Mat M = stackedFormsT(P, x);
    const Vec g = stackedGradients(h, x);
    HamiltonianSolve out;
    out.X = M.colPivHouseholderQr().solve(g);
    out.residual = (M * out.X - g).norm();
    out.accepted = out.residual < 1e-8 * (1.0 + g.norm());
    return out;
}

Vec hamiltonian_field_checked(const PolySymplecticStructure& P, const KFunction& h, const Vec& x) {
    HamiltonianSolve s = hamiltonian_field_at(P, h, x);
    if (!s.accepted)
        throw ResidualTooLarge("k-function is not omega-Hamiltonian at the point", s.residual);
    return s.X;
}

FieldHamiltonianCheck is_hamiltonian_field(const PolySymplecticStructure& P, const VectorField& X,
                                           const std::vector<Vec>& points, double tol) {
    FieldHamiltonianCheck out;
    out.defects.assign((std::size_t)P.k, 0.0);
    for (const Vec& x : points) {
        const Vec Xv = X.value(x);
        const Mat XJ = X.jacobian(x);
        for (int a = 0; a < P.k; ++a) {
            const Mat A = P.form_value(a, x);
            std::vector<Mat> dA = P.forms[(std::size_t)a]->derivative(x);
            // c_j = sum_m A_mj X_m; d_i c_j = sum_m dA_i(m,j) X_m + A_mj dX_m/dx_i.
            Mat dc(P.n, P.n);
            for (int i = 0; i < P.n; ++i)
                for (int j = 0; j < P.n; ++j) {
                    double v = 0.0;
                    for (int m = 0; m < P.n; ++m)
                        v += dA[(std::size_t)i](m, j) * Xv(m) + A(m, j) * XJ(m, i);
                    dc(i, j) = v;
                }
            const double defect = (dc - dc.transpose()).cwiseAbs().maxCoeff();
            out.defects[(std::size_t)a] = std::max(out.defects[(std::size_t)a], defect);
        }
    }
    for (int a = 0; a < P.k; ++a) out.per_alpha.push_back(out.defects[(std::size_t)a] < tol);
    return out;
}

Vec bracket_k(const PolySymplecticStructure& P, const KFunction& h, const KFunction& g,
              const Vec& x) {
    const Vec Xh = hamiltonian_field_checked(P, h, x);
    const Vec Xg = hamiltonian_field_checked(P, g, x);
    Vec out(P.k);
    for (int a = 0; a < P.k; ++a) out(a) = Xh.dot(P.form_value(a, x) * Xg);
    return out;
}

double derivation_check(const PolySymplecticStructure& P, const KFunction& h, const KFunction& f,
                        const std::vector<Vec>& points) {
    double defect = 0.0;
    for (const Vec& x : points) {
        const Vec Xh = hamiltonian_field_checked(P, h, x);
        const Vec Xf = hamiltonian_field_checked(P, f, x);
        for (int a = 0; a < P.k; ++a) {
            const double lhs = Xh.dot(f.components[(std::size_t)a]->gradient(x));
            const double rhs = Xf.dot(P.form_value(a, x) * Xh);
            defect = std::max(defect, std::abs(lhs - rhs));
        }
    }
    return defect;
}

}  // namespace psmech
