#ifndef PSMECH_DUAL_HPP
#define PSMECH_DUAL_HPP

// Forward-mode dual numbers with n-wide seed vectors. Dual1 carries first
// derivatives, Dual2 additionally the full Hessian (forward-over-forward).
// All catalog systems have n <= ~20, so dense seeds are fine.

#include "psmech/common.hpp"

#include <cmath>

namespace psmech {

struct Dual1 {
    double v = 0.0;
    Vec g;  // length n

    Dual1() = default;
    explicit Dual1(int n) : v(0.0), g(Vec::Zero(n)) {}
    Dual1(double value, Vec grad) : v(value), g(std::move(grad)) {}

    static Dual1 constant(double c, int n) { return Dual1(c, Vec::Zero(n)); }
    static Dual1 variable(double x, int i, int n) {
        Dual1 d(x, Vec::Zero(n));
        d.g(i) = 1.0;
        return d;
    }
};

inline Dual1 operator+(const Dual1& a, const Dual1& b) { return {a.v + b.v, a.g + b.g}; }
inline Dual1 operator-(const Dual1& a, const Dual1& b) { return {a.v - b.v, a.g - b.g}; }
inline Dual1 operator-(const Dual1& a) { return {-a.v, -a.g}; }
inline Dual1 operator*(const Dual1& a, const Dual1& b) {
    return {a.v * b.v, a.v * b.g + b.v * a.g};
}
inline Dual1 operator/(const Dual1& a, const Dual1& b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.g - q * b.g) * inv};
}
inline Dual1 operator*(double s, const Dual1& a) { return {s * a.v, s * a.g}; }

inline Dual1 sin(const Dual1& a) { return {std::sin(a.v), std::cos(a.v) * a.g}; }
inline Dual1 cos(const Dual1& a) { return {std::cos(a.v), -std::sin(a.v) * a.g}; }
inline Dual1 tan(const Dual1& a) {
    const double t = std::tan(a.v);
    return {t, (1.0 + t * t) * a.g};
}
inline Dual1 exp(const Dual1& a) {
    const double e = std::exp(a.v);
    return {e, e * a.g};
}
inline Dual1 log(const Dual1& a) { return {std::log(a.v), a.g / a.v}; }
inline Dual1 sqrt(const Dual1& a) {
    const double s = std::sqrt(a.v);
    return {s, a.g / (2.0 * s)};
}

struct Dual2 {
    double v = 0.0;
    Vec g;
    Mat h;  // n x n, symmetric

    Dual2() = default;
    explicit Dual2(int n) : v(0.0), g(Vec::Zero(n)), h(Mat::Zero(n, n)) {}
    Dual2(double value, Vec grad, Mat hess) : v(value), g(std::move(grad)), h(std::move(hess)) {}

    static Dual2 constant(double c, int n) { return Dual2(c, Vec::Zero(n), Mat::Zero(n, n)); }
    static Dual2 variable(double x, int i, int n) {
        Dual2 d(x, Vec::Zero(n), Mat::Zero(n, n));
        d.g(i) = 1.0;
        return d;
    }
};

inline Dual2 operator+(const Dual2& a, const Dual2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
inline Dual2 operator-(const Dual2& a, const Dual2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
inline Dual2 operator-(const Dual2& a) { return {-a.v, -a.g, -a.h}; }
inline Dual2 operator*(const Dual2& a, const Dual2& b) {
    Mat h = a.v * b.h + b.v * a.h;
    h.noalias() += a.g * b.g.transpose();
    h.noalias() += b.g * a.g.transpose();
    return {a.v * b.v, a.v * b.g + b.v * a.g, std::move(h)};
}
inline Dual2 operator*(double s, const Dual2& a) { return {s * a.v, s * a.g, s * a.h}; }
inline Dual2 operator/(const Dual2& a, const Dual2& b) {
    // q = a/b => a = q b; differentiate twice.
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    Vec qg = (a.g - q * b.g) * inv;
    Mat qh = (a.h - q * b.h) * inv;
    qh.noalias() -= inv * (qg * b.g.transpose() + b.g * qg.transpose());
    return {q, std::move(qg), std::move(qh)};
}

// Chain rule for a smooth primitive u: value u(f), grad u'(f) f', hess u'(f) f'' + u''(f) f' f'^T.
inline Dual2 chain(const Dual2& a, double u, double du, double ddu) {
    Mat h = du * a.h;
    h.noalias() += ddu * (a.g * a.g.transpose());
    return {u, du * a.g, std::move(h)};
}

inline Dual2 sin(const Dual2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Dual2 cos(const Dual2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Dual2 tan(const Dual2& a) {
    const double t = std::tan(a.v);
    const double s = 1.0 + t * t;
    return chain(a, t, s, 2.0 * t * s);
}
inline Dual2 exp(const Dual2& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}
inline Dual2 log(const Dual2& a) { return chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Dual2 sqrt(const Dual2& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * s * s));
}

// Scalar access, used by generic code (pivot selection, domain checks).
inline double value_of(double x) { return x; }
inline double value_of(const Dual1& x) { return x.v; }
inline double value_of(const Dual2& x) { return x.v; }

// Generic constants and seeds, for code templated over the scalar type.
template <class S>
S make_constant(double c, int n);
template <>
inline double make_constant<double>(double c, int) { return c; }
template <>
inline Dual1 make_constant<Dual1>(double c, int n) { return Dual1::constant(c, n); }
template <>
inline Dual2 make_constant<Dual2>(double c, int n) { return Dual2::constant(c, n); }

template <class S>
S make_variable(double x, int i, int n);
template <>
inline double make_variable<double>(double x, int, int) { return x; }
template <>
inline Dual1 make_variable<Dual1>(double x, int i, int n) { return Dual1::variable(x, i, n); }
template <>
inline Dual2 make_variable<Dual2>(double x, int i, int n) { return Dual2::variable(x, i, n); }

}  // namespace psmech

#endif
