#include "psmech/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace psmech {

namespace {

Vec evalRhs(const OdeRhs& rhs, const Vec& x, double t, const DomainPredicate& domain) {
    if (!domain.satisfied(x)) throw DomainExit("trajectory left the declared domain", t);
    return rhs(x);
}

}  // namespace

Trajectory integrate_rk4(const OdeRhs& rhs, const Vec& x0, double t_final,
                         const IntegratorOptions& opt, const DomainPredicate& domain) {
    Trajectory traj;
    traj.method = "rk4";
    traj.dt = opt.dt;
    const double dir = t_final >= 0 ? 1.0 : -1.0;
    const double h = dir * std::abs(opt.dt);
    double t = 0.0;
    Vec x = x0;
    traj.times.push_back(t);
    traj.states.push_back(x);
    while (dir * (t_final - t) > 1e-15 * std::abs(t_final)) {
        const double step = dir * std::min(std::abs(h), std::abs(t_final - t));
        const Vec k1 = evalRhs(rhs, x, t, domain);
        const Vec k2 = evalRhs(rhs, x + 0.5 * step * k1, t, domain);
        const Vec k3 = evalRhs(rhs, x + 0.5 * step * k2, t, domain);
        const Vec k4 = evalRhs(rhs, x + step * k3, t, domain);
        x += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

// Dormand-Prince 5(4) coefficients.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

Trajectory integrate_rk45(const OdeRhs& rhs, const Vec& x0, double t_final,
                          const IntegratorOptions& opt, const DomainPredicate& domain) {
    Trajectory traj;
    traj.method = "rk45";
    traj.rtol = opt.rtol;
    traj.atol = opt.atol;
    const double dir = t_final >= 0 ? 1.0 : -1.0;
    const double span = std::abs(t_final);
    double t = 0.0;
    Vec x = x0;
    traj.times.push_back(t);
    traj.states.push_back(x);
    Vec k1 = evalRhs(rhs, x, t, domain);
    double h = dir * std::min(1e-3 * (span > 0 ? span : 1.0),
                              1e-2 / std::max(1.0, k1.norm() / std::max(1.0, x.norm())));
    const double hmin = 1e-14 * std::max(span, 1.0);
    while (dir * (t_final - t) > 1e-15 * std::max(span, 1.0)) {
        if (std::abs(h) < hmin) throw StepUnderflow("step size underflow", t);
        if (dir * (t + h - t_final) > 0) h = t_final - t;
        if (opt.max_step > 0 && std::abs(h) > opt.max_step) h = dir * opt.max_step;

        using namespace dp;
        const Vec k2 = evalRhs(rhs, x + h * (a21 * k1), t, domain);
        const Vec k3 = evalRhs(rhs, x + h * (a31 * k1 + a32 * k2), t, domain);
        const Vec k4 = evalRhs(rhs, x + h * (a41 * k1 + a42 * k2 + a43 * k3), t, domain);
        const Vec k5 = evalRhs(rhs, x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), t, domain);
        const Vec k6 = evalRhs(
            rhs, x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), t, domain);
        const Vec x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = evalRhs(rhs, x5, t, domain);
        const Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double errnorm = 0.0;
        for (int i = 0; i < x.size(); ++i) {
            const double sk = opt.atol + opt.rtol * std::max(std::abs(x(i)), std::abs(x5(i)));
            const double q = err(i) / sk;
            errnorm += q * q;
        }
        errnorm = std::sqrt(errnorm / x.size());

        if (errnorm <= 1.0) {
            t += h;
            x = x5;
            k1 = k7;  // FSAL
            traj.times.push_back(t);
            traj.states.push_back(x);
        }
        const double factor =
            std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2)));
        h *= factor;
    }
    return traj;
}

OdeRhs rhs_from_field(const VectorFieldPtr& X) {
    return [X](const Vec& x) { return X->value(x); };
}

OdeRhs rhs_from_hamiltonian(const PolySymplecticStructure& P, const KFunction& h) {
    return [&P, &h](const Vec& x) { return hamiltonian_field_checked(P, h, x); };
}

void write_csv(std::ostream& os, const Trajectory& traj) {
    const int n = traj.states.empty() ? 0 : (int)traj.states.front().size();
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",x" << i;
    os << "\n";
    char buf[40];
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        std::snprintf(buf, sizeof(buf), "%.17g", traj.times[r]);
        os << buf;
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", traj.states[r](i));
            os << ',' << buf;
        }
        os << "\n";
    }
}

ConservationReport conservation_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                      const KFunction& h, const Trajectory& traj) {
    ConservationReport rep;
    std::vector<std::pair<std::string, ScalarFieldPtr>> quantities;
    for (int a = 0; a < P.k; ++a)
        quantities.emplace_back("h" + std::to_string(a + 1), h.components[(std::size_t)a]);
    if (S.explicit_momentum()) {
        for (int a = 0; a < P.k; ++a)
            for (int i = 0; i < S.g_dim; ++i)
                quantities.emplace_back(
                    "J" + std::to_string(a + 1) + "_" + std::to_string(i + 1),
                    S.momentum.J[(std::size_t)(a * S.g_dim + i)]);
    }
    rep.pass = true;
    for (const auto& [name, q] : quantities) {
        DriftEntry e;
        e.name = name;
        e.initial = q->value(traj.states.front());
        for (const Vec& x : traj.states)
            e.max_drift = std::max(e.max_drift, std::abs(q->value(x) - e.initial));
        e.max_drift /= 1.0 + std::abs(e.initial);
        rep.pass = rep.pass && e.max_drift < rep.tol;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

LyapunovResult lyapunov_test(const VectorField& X, const LyapunovCandidate& cand, double radius,
                             int samples, std::mt19937_64& rng) {
    LyapunovResult res;
    res.center_value = cand.M->value(cand.center);
    res.min_value = std::numeric_limits<double>::infinity();
    res.max_derivative = -std::numeric_limits<double>::infinity();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int n = (int)cand.center.size();
    bool positive = true;
    for (int s = 0; s < samples; ++s) {
        Vec d(n);
        for (int i = 0; i < n; ++i) d(i) = gauss(rng);
        d *= radius * std::pow(u(rng), 1.0 / n) / d.norm();
        const Vec x = cand.center + d;
        const double m = cand.M->value(x);
        const double mdot = X.value(x).dot(cand.M->gradient(x));
        if (m < res.min_value) res.min_value = m;
        if (mdot > res.max_derivative) {
            res.max_derivative = mdot;
            res.worst_point = x;
        }
        positive = positive && m > 0.0;
    }
    res.pass = std::abs(res.center_value) < 1e-10 && positive && res.max_derivative <= 1e-9;
    return res;
}

EmpiricalStabilityResult empirical_stability(const OdeRhs& rhs, const Vec& center,
                                             const std::vector<ScalarFieldPtr>& monitors,
                                             double epsilon, double delta, double horizon,
                                             int n_samples, std::mt19937_64& rng,
                                             const IntegratorOptions& opt,
                                             const DomainPredicate& domain) {
    EmpiricalStabilityResult res;
    res.epsilon = epsilon;
    res.delta = delta;
    res.horizon = horizon;
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int n = (int)center.size();

    auto deviation = [&](const Vec& x) {
        if (monitors.empty()) return (x - center).cwiseAbs().maxCoeff();
        double worst = 0.0;
        for (const auto& m : monitors)
            worst = std::max(worst, std::abs(m->value(x) - m->value(center)));
        return worst;
    };

    bool stable = true;
    for (int s = 0; s < n_samples; ++s) {
        Vec d(n);
        for (int i = 0; i < n; ++i) d(i) = gauss(rng);
        d *= delta / d.norm();
        const Vec x0 = center + d;
        try {
            const Trajectory traj = integrate_rk45(rhs, x0, horizon, opt, domain);
            for (const Vec& x : traj.states) {
                const double dev = deviation(x);
                res.worst_excursion = std::max(res.worst_excursion, dev);
                if (dev >= epsilon) stable = false;
            }
        } catch (const DomainExit&) {
            ++res.domain_exits;
            stable = false;
        }
        ++res.samples_run;
    }
    res.stable_at_scale = stable;
    return res;
}

}  // namespace psmech
