#ifndef PSMECH_DYNAMICS_HPP
#define PSMECH_DYNAMICS_HPP

// Trajectory integration (fixed-step RK4 and adaptive Dormand-Prince RK45),
// conservation drift, Lyapunov-candidate tests, and finite-horizon empirical
// stability probes.

#include "psmech/common.hpp"
#include "psmech/fields.hpp"
#include "psmech/geometry.hpp"
#include "psmech/symmetry.hpp"

#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace psmech {

using OdeRhs = std::function<Vec(const Vec&)>;

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double dt = 1e-3;       // fixed step for rk4
    double max_step = 0.0;  // 0 = unlimited
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec> states;
    std::string method;
    double rtol = 0.0, atol = 0.0, dt = 0.0;
};

Trajectory integrate_rk4(const OdeRhs& rhs, const Vec& x0, double t_final,
                         const IntegratorOptions& opt = {}, const DomainPredicate& domain = {});
Trajectory integrate_rk45(const OdeRhs& rhs, const Vec& x0, double t_final,
                          const IntegratorOptions& opt = {}, const DomainPredicate& domain = {});

OdeRhs rhs_from_field(const VectorFieldPtr& X);
// Pointwise omega-Hamiltonian solve as a right-hand side.
OdeRhs rhs_from_hamiltonian(const PolySymplecticStructure& P, const KFunction& h);

// CSV with header "t,x1,...,xn", 17 significant digits per value.
void write_csv(std::ostream& os, const Trajectory& traj);

struct DriftEntry {
    std::string name;
    double initial = 0.0;
    double max_drift = 0.0;  // |q(t) - q(0)| / (1 + |q(0)|)
};
struct ConservationReport {
    std::vector<DriftEntry> entries;
    bool pass = false;
    double tol = 1e-6;
};
// Drift of every h^alpha and (explicit) J^alpha_i along the trajectory.
ConservationReport conservation_check(const PolySymplecticStructure& P, const SymmetryModel& S,
                                      const KFunction& h, const Trajectory& traj);

struct LyapunovCandidate {
    ScalarFieldPtr M;
    Vec center;
};
struct LyapunovResult {
    bool pass = false;
    double center_value = 0.0;
    double min_value = 0.0;   // over the sampled ball minus the center
    double max_derivative = 0.0;  // max X . grad M
    Vec worst_point;
};
LyapunovResult lyapunov_test(const VectorField& X, const LyapunovCandidate& cand, double radius,
                             int samples, std::mt19937_64& rng);

struct EmpiricalStabilityResult {
    bool stable_at_scale = false;  // finite-horizon, sampled: "no instability detected"
    double worst_excursion = 0.0;
    int samples_run = 0;
    int domain_exits = 0;
    double epsilon = 0.0, delta = 0.0, horizon = 0.0;
};
// Integrates initial conditions from the delta-ball around `center` to time T
// and monitors max |m(x(t)) - m(center)| over the given monitor functions
// (chart coordinates when `monitors` is empty).
EmpiricalStabilityResult empirical_stability(const OdeRhs& rhs, const Vec& center,
                                             const std::vector<ScalarFieldPtr>& monitors,
                                             double epsilon, double delta, double horizon,
                                             int n_samples, std::mt19937_64& rng,
                                             const IntegratorOptions& opt = {},
                                             const DomainPredicate& domain = {});

}  // namespace psmech

#endif
