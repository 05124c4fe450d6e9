#ifndef PSMECH_COMMON_HPP
#define PSMECH_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace psmech {

inline constexpr const char* kVersion = "0.1.0";

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error in an expression string; offset is the byte position in the input.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
    std::size_t offset;
};

// A primitive was evaluated outside its domain (log/sqrt of a non-positive
// argument, division by zero). Carries the offending subexpression.
struct DomainError : Error {
    DomainError(const std::string& msg, const std::string& subexpr)
        : Error(msg + " in \"" + subexpr + "\""), subexpression(subexpr) {}
    std::string subexpression;
};

struct DimensionError : Error {
    using Error::Error;
};

// The requested k-function is not omega-Hamiltonian at the point: the stacked
// solve left a residual above tolerance. A mathematical verdict, but thrown by
// operations whose contract requires an accepted solve.
struct ResidualTooLarge : Error {
    ResidualTooLarge(const std::string& msg, double res) : Error(msg), residual(res) {}
    double residual;
};

// Trajectory left the declared domain of the vector field.
struct DomainExit : Error {
    DomainExit(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};

struct StepUnderflow : Error {
    StepUnderflow(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};

struct InputError : Error {
    using Error::Error;
};

}  // namespace psmech

#endif
