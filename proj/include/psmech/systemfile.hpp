#ifndef PSMECH_SYSTEMFILE_HPP
#define PSMECH_SYSTEMFILE_HPP

// JSON system-definition files and JSON report serialization. The file format
// is documented in docs/system-format.md; only the upper triangle of each form
// matrix is required, the lower triangle is filled by skewness.

#include "psmech/catalog.hpp"
#include "psmech/common.hpp"
#include "psmech/dynamics.hpp"
#include "psmech/equilibrium.hpp"
#include "psmech/geometry.hpp"
#include "psmech/reduction.hpp"
#include "psmech/symmetry.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace psmech {

struct SystemDefinition {
    std::string name;
    int n = 0, k = 0;
    std::vector<std::string> coords;
    ParamMap params;
    PolySymplecticStructure structure;
    std::optional<KFunction> hamiltonian;
    VectorFieldPtr dynamics;  // optional explicit vector field
    std::optional<SymmetryModel> symmetry;
    DomainPredicate domain;
    std::vector<Vec> seeds;
    std::vector<LevelSpec> levels;
    std::string native_forms;  // nonempty when the forms use a built-in family
};

// Throws InputError with a JSON-path-like location on malformed documents.
SystemDefinition load_system(const nlohmann::json& doc);
SystemDefinition load_system_file(const std::string& path);

// Round-trippable export of a catalog entry.
nlohmann::json system_to_json(const CatalogEntry& entry);

// ---- report documents (shared schema: every report carries the tolerance
// configuration, sample seed, and tool version for reproducibility).

nlohmann::json report_envelope(const std::string& kind, std::uint64_t seed,
                               const ToleranceConfig& cfg);
nlohmann::json to_json(const StructureReport& rep);
nlohmann::json to_json(const MomentumCheck& chk);
nlohmann::json to_json(const ReductionReport& rep);
nlohmann::json to_json(const StabilityReport& rep);
nlohmann::json to_json(const RelativeEquilibrium& eq);
nlohmann::json to_json(const ConservationReport& rep);
nlohmann::json to_json(const std::vector<ClaimResult>& results);

}  // namespace psmech

#endif
