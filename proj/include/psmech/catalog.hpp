#ifndef PSMECH_CATALOG_HPP
#define PSMECH_CATALOG_HPP

// Built-in, parameterized example systems, each bundled with the checks it is
// expected to satisfy. `catalog run <id>` evaluates every claim through the
// public operations and reports mismatches with both values.

#include "psmech/common.hpp"
#include "psmech/dynamics.hpp"
#include "psmech/equilibrium.hpp"
#include "psmech/geometry.hpp"
#include "psmech/symmetry.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace psmech {

struct ClaimResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CatalogEntry;

struct Claim {
    std::string name;
    std::function<ClaimResult(const CatalogEntry&, std::mt19937_64&)> run;
};

// Hand-written reduced system, used where stability statements live on the
// quotient (reduced dynamics are never derived automatically).
struct ReducedModel {
    int n = 0;
    std::vector<std::string> coords;
    VectorFieldPtr dynamics;
    Vec equilibrium;
    std::optional<LyapunovCandidate> lyapunov;
};

struct CatalogEntry {
    std::string id;
    std::string title;
    int n = 0, k = 0;
    std::vector<std::string> coords;
    ParamMap params;

    PolySymplecticStructure structure;
    std::optional<KFunction> hamiltonian;
    VectorFieldPtr dynamics;  // closed-form X_h, when known
    std::optional<SymmetryModel> symmetry;
    std::optional<LevelSpec> level;
    DomainPredicate domain;
    Vec box_lo, box_hi;          // sampling box for generic points
    double sample_margin = 1e-3; // domain margin used when sampling
    std::vector<Vec> equilibrium_seeds;
    std::optional<ReducedModel> reduced;

    std::vector<Claim> claims;
};

std::vector<std::string> catalog_ids();
// Throws InputError for unknown ids. Overrides replace default parameters
// (e.g. {"b",2} for the oscillators, {"k",5} for the integrable system).
CatalogEntry catalog_load(const std::string& id, const ParamMap& overrides = {});
std::vector<ClaimResult> run_claims(const CatalogEntry& entry, std::uint64_t seed = 0);

// Shared sampling helpers (box + domain margin; level-set sampler wrapper).
std::vector<Vec> catalog_sample_points(const CatalogEntry& e, int count, std::mt19937_64& rng);
std::vector<Vec> catalog_level_points(const CatalogEntry& e, int count, std::mt19937_64& rng);

}  // namespace psmech

#endif
