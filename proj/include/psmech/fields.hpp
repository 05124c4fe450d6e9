#ifndef PSMECH_FIELDS_HPP
#define PSMECH_FIELDS_HPP

// Smooth fields on a chart of R^n. Expression-backed implementations cover
// everything users can write in system files; the catalog adds one native
// matrix field (a coframe assembled through a differentiable matrix inverse).

#include "psmech/common.hpp"
#include "psmech/expr.hpp"

#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace psmech {

class ScalarField {
public:
    virtual ~ScalarField() = default;
    virtual int dim() const = 0;
    virtual double value(const Vec& x) const = 0;
    virtual Vec gradient(const Vec& x) const = 0;
    virtual Mat hessian(const Vec& x) const = 0;
};
using ScalarFieldPtr = std::shared_ptr<const ScalarField>;

class VectorField {
public:
    virtual ~VectorField() = default;
    virtual int dim() const = 0;
    virtual Vec value(const Vec& x) const = 0;
    // J(i,j) = d component_i / d x_j
    virtual Mat jacobian(const Vec& x) const = 0;
};
using VectorFieldPtr = std::shared_ptr<const VectorField>;

class MatrixField {
public:
    virtual ~MatrixField() = default;
    virtual int dim() const = 0;
    virtual Mat value(const Vec& x) const = 0;
    // d[l](i,j) = d A_ij / d x_l
    virtual std::vector<Mat> derivative(const Vec& x) const = 0;
};
using MatrixFieldPtr = std::shared_ptr<const MatrixField>;

// ------------------------------------------------------------ expression-backed

class ExprScalarField final : public ScalarField {
public:
    ExprScalarField(Expression e, ParamMap params = {})
        : expr_(std::move(e)), params_(std::move(params)) {}

    int dim() const override { return expr_.dim(); }
    double value(const Vec& x) const override { return eval(expr_, x, params_); }
    Vec gradient(const Vec& x) const override { return psmech::gradient(expr_, x, params_); }
    Mat hessian(const Vec& x) const override { return psmech::hessian(expr_, x, params_); }

    const Expression& expression() const { return expr_; }
    const ParamMap& params() const { return params_; }

private:
    Expression expr_;
    ParamMap params_;
};

class ExprVectorField final : public VectorField {
public:
    ExprVectorField(std::vector<Expression> comps, int n, ParamMap params = {})
        : comps_(std::move(comps)), n_(n), params_(std::move(params)) {
        if (static_cast<int>(comps_.size()) != n_)
            throw DimensionError("vector field needs one component per dimension");
    }

    int dim() const override { return n_; }
    Vec value(const Vec& x) const override {
        Vec v(n_);
        for (int i = 0; i < n_; ++i) v(i) = eval(comps_[static_cast<std::size_t>(i)], x, params_);
        return v;
    }
    Mat jacobian(const Vec& x) const override {
        Mat J(n_, n_);
        for (int i = 0; i < n_; ++i)
            J.row(i) = psmech::gradient(comps_[static_cast<std::size_t>(i)], x, params_).transpose();
        return J;
    }

    const std::vector<Expression>& components() const { return comps_; }
    const ParamMap& params() const { return params_; }

private:
    std::vector<Expression> comps_;
    int n_;
    ParamMap params_;
};

class ExprMatrixField final : public MatrixField {
public:
    // entries in row-major order; empty expressions count as zero.
    ExprMatrixField(std::vector<Expression> entries, int n, ParamMap params = {})
        : entries_(std::move(entries)), n_(n), params_(std::move(params)) {
        if (static_cast<int>(entries_.size()) != n_ * n_)
            throw DimensionError("matrix field needs n*n entries");
    }

    int dim() const override { return n_; }
    Mat value(const Vec& x) const override {
        Mat A(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) A(i, j) = eval(entry(i, j), x, params_);
        return A;
    }
    std::vector<Mat> derivative(const Vec& x) const override {
        std::vector<Mat> d(static_cast<std::size_t>(n_), Mat::Zero(n_, n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const Expression& e = entry(i, j);
                if (e.empty() || !e.has_variables()) continue;
                Vec g = psmech::gradient(e, x, params_);
                for (int l = 0; l < n_; ++l) d[static_cast<std::size_t>(l)](i, j) = g(l);
            }
        return d;
    }

    const Expression& entry(int i, int j) const {
        return entries_[static_cast<std::size_t>(i * n_ + j)];
    }
    const ParamMap& params() const { return params_; }

private:
    std::vector<Expression> entries_;
    int n_;
    ParamMap params_;
};

class ConstantMatrixField final : public MatrixField {
public:
    explicit ConstantMatrixField(Mat A) : A_(std::move(A)) {}
    int dim() const override { return static_cast<int>(A_.rows()); }
    Mat value(const Vec&) const override { return A_; }
    std::vector<Mat> derivative(const Vec&) const override {
        return std::vector<Mat>(static_cast<std::size_t>(dim()), Mat::Zero(dim(), dim()));
    }

private:
    Mat A_;
};

// ----------------------------------------------------------------- domains

// Conjunction of strict inequalities. Positive: e(x) > margin;
// Nonzero: |e(x)| > margin. Samplers pass a larger margin to stay clear of
// the boundary; validity itself uses margin 0.
struct DomainPredicate {
    enum class Kind { Positive, Nonzero };
    struct Constraint {
        ScalarFieldPtr field;
        Kind kind;
    };
    std::vector<Constraint> constraints;

    bool satisfied(const Vec& x, double margin = 0.0) const {
        for (const auto& c : constraints) {
            const double v = c.field->value(x);
            if (c.kind == Kind::Positive ? !(v > margin) : !(std::abs(v) > margin)) return false;
        }
        return true;
    }
    bool empty() const { return constraints.empty(); }
};

}  // namespace psmech

#endif
