#ifndef PSMECH_EXPR_HPP
#define PSMECH_EXPR_HPP

// Scalar expressions over x1..xn plus named parameters, with forward-mode
// differentiation. The grammar is documented in docs/grammar.ebnf.

#include "psmech/common.hpp"
#include "psmech/dual.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace psmech {

using ParamMap = std::map<std::string, double>;

enum class ExprOp {
    Const,
    Var,
    Param,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt
};

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op = ExprOp::Const;
    double value = 0.0;  // Const
    int index = -1;      // Var, 0-based
    std::string name;    // Var display name / Param name
    ExprNodePtr a, b;
};

// Immutable after construction; safe to share and evaluate concurrently.
class Expression {
public:
    Expression() = default;
    Expression(ExprNodePtr root, int dim) : root_(std::move(root)), dim_(dim) {}

    const ExprNodePtr& root() const { return root_; }
    int dim() const { return dim_; }
    bool empty() const { return root_ == nullptr; }
    bool has_variables() const;

private:
    ExprNodePtr root_;
    int dim_ = 0;
};

// Parses `text` over variables x1..xn (or the given alias names, one per
// dimension). Identifiers are resolved against aliases, the canonical xk
// names, and `params`; anything else is a syntax error with byte offset.
Expression parse(const std::string& text, int dimension, const ParamMap& params = {},
                 const std::vector<std::string>& var_names = {});

std::string to_string(const Expression& e);
bool structurally_equal(const Expression& a, const Expression& b);

double eval(const Expression& e, const Vec& x, const ParamMap& params = {});
Vec gradient(const Expression& e, const Vec& x, const ParamMap& params = {});
// Symmetrized Hessian; raises DomainError if the raw result is asymmetric
// beyond 1e-9 relative (signals a non-smooth evaluation).
Mat hessian(const Expression& e, const Vec& x, const ParamMap& params = {});

// Generic evaluation used by code that differentiates through compound
// constructions (e.g. matrix inverses). Instantiated for double/Dual1/Dual2.
template <class S>
S eval_generic(const Expression& e, const std::vector<S>& x, const ParamMap& params);

Dual1 eval_dual1(const Expression& e, const Vec& x, const ParamMap& params = {});
Dual2 eval_dual2(const Expression& e, const Vec& x, const ParamMap& params = {});

}  // namespace psmech

#endif
