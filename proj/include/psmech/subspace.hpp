#ifndef PSMECH_SUBSPACE_HPP
#define PSMECH_SUBSPACE_HPP

// Subspaces of R^n as orthonormal column bases. All rank decisions go through
// one relative SVD threshold so tolerance policy stays centralized; reports
// record the threshold that produced each basis.

#include "psmech/common.hpp"

#include <string>
#include <vector>

namespace psmech {

struct ToleranceConfig {
    double rank_rel = 1e-8;  // singular-value cutoff, relative to sigma_max
    double eq_tol = 1e-8;    // projection-residual bound for subspace equality
    double eig_tol = 1e-7;   // relative eigenvalue cutoff for definiteness

    void validate() const {
        if (!(rank_rel > 0.0) || !(eq_tol > 0.0) || !(eig_tol > 0.0))
            throw InputError("all tolerances must be positive");
    }
};

struct SubspaceBasis {
    int n = 0;       // ambient dimension
    Mat B;           // n x m, orthonormal columns
    double tol = 0;  // rank tolerance that produced it

    int dim() const { return static_cast<int>(B.cols()); }
};

SubspaceBasis span_of(const std::vector<Vec>& vectors, int n, const ToleranceConfig& cfg = {});
// Span of the columns of M (n x m).
SubspaceBasis span_cols(const Mat& M, const ToleranceConfig& cfg = {});
// Kernel of the linear map given by `rows` (m x n), i.e. {v : rows*v = 0}.
SubspaceBasis kernel_of_rows(const Mat& rows, const ToleranceConfig& cfg = {});

SubspaceBasis sum(const SubspaceBasis& U, const SubspaceBasis& V, const ToleranceConfig& cfg = {});
SubspaceBasis intersect(const SubspaceBasis& U, const SubspaceBasis& V,
                        const ToleranceConfig& cfg = {});
bool equals(const SubspaceBasis& U, const SubspaceBasis& V, const ToleranceConfig& cfg = {});
bool contains(const SubspaceBasis& U, const Vec& v, const ToleranceConfig& cfg = {});
// U contains V as a subspace.
bool contains_subspace(const SubspaceBasis& U, const SubspaceBasis& V,
                       const ToleranceConfig& cfg = {});

// W^{perp,k} = {v : w^T A^alpha v = 0 for all w in W, all alpha}.
// Every A^alpha must be skew-symmetric to 1e-10 relative.
SubspaceBasis k_orth_complement(const SubspaceBasis& W, const std::vector<Mat>& forms,
                                const ToleranceConfig& cfg = {});

// Euclidean-orthogonal complement of U inside the enclosing subspace E (U must
// be contained in E).
SubspaceBasis complement_within(const SubspaceBasis& U, const SubspaceBasis& E,
                                const ToleranceConfig& cfg = {});

Mat restrict_bilinear(const Mat& H, const SubspaceBasis& S);

enum class Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemidefinite,
    NegativeSemidefinite,
    Indefinite,
    Zero
};

std::string to_string(Definiteness d);

Definiteness definiteness(const Mat& H, double eig_tol = 1e-7);

}  // namespace psmech

#endif
