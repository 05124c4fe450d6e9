#include "psmech/systemfile.hpp"

#include <fstream>
#include <sstream>

namespace psmech {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InputError("system file: " + where + ": " + what);
}

std::vector<std::string> defaultCoords(int n) {
    std::vector<std::string> c;
    for (int i = 1; i <= n; ++i) c.push_back("x" + std::to_string(i));
    return c;
}

Expression parseAt(const std::string& text, const SystemDefinition& sys,
                   const std::string& where) {
    try {
        return parse(text, sys.n, sys.params, sys.coords);
    } catch (const ParseError& ex) {
        bad(where, std::string(ex.what()) + " in \"" + text + "\"");
    }
}

Vec parseVec(const json& arr, int n, const std::string& where) {
    if (!arr.is_array() || (int)arr.size() != n)
        bad(where, "expected an array of " + std::to_string(n) + " numbers");
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = arr[(std::size_t)i].get<double>();
    return v;
}

// Forms are given as n x n string matrices; empty strings and "0" are zero.
// The lower triangle may be omitted (empty); if present it must negate the
// upper triangle, checked numerically at a probe point.
MatrixFieldPtr loadForm(const json& m, const SystemDefinition& sys, const std::string& where) {
    const int n = sys.n;
    if (!m.is_array() || (int)m.size() != n) bad(where, "expected an n x n matrix of expressions");
    std::vector<std::string> text((std::size_t)(n * n), "");
    for (int i = 0; i < n; ++i) {
        const auto& row = m[(std::size_t)i];
        if (!row.is_array() || (int)row.size() != n) bad(where, "row " + std::to_string(i) + " malformed");
        for (int j = 0; j < n; ++j) {
            const auto& cell = row[(std::size_t)j];
            if (cell.is_number()) {
                std::ostringstream os;
                os.precision(17);
                os << cell.get<double>();
                text[(std::size_t)(i * n + j)] = os.str();
            } else if (cell.is_string()) {
                text[(std::size_t)(i * n + j)] = cell.get<std::string>();
            } else {
                bad(where, "entries must be strings or numbers");
            }
        }
    }
    auto isZero = [](const std::string& s) {
        return s.empty() || s == "0" || s == "0.0" || s == "-0";
    };
    for (int i = 0; i < n; ++i)
        if (!isZero(text[(std::size_t)(i * n + i)]))
            bad(where, "diagonal entry (" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                           ") must be zero");
    std::vector<Expression> entries((std::size_t)(n * n));
    Vec probe(n);
    for (int i = 0; i < n; ++i) probe(i) = 0.37 + 0.11 * i;  // generic, avoids coordinate planes
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::string &up = text[(std::size_t)(i * n + j)],
                              &lo = text[(std::size_t)(j * n + i)];
            std::string entryName = where + "(" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")";
            Expression upper;
            if (!isZero(up)) upper = parseAt(up, sys, entryName);
            if (!isZero(lo)) {
                Expression lower = parseAt(lo, sys, entryName);
                if (isZero(up)) {
                    upper = parseAt("-(" + lo + ")", sys, entryName);
                } else {
                    double a = 0, b = 0;
                    try {
                        a = eval(upper, probe, sys.params);
                        b = eval(lower, probe, sys.params);
                    } catch (const DomainError&) {
                        // probe point outside the entry's domain: accept as declared
                    }
                    if (std::abs(a + b) > 1e-9 * (1.0 + std::abs(a)))
                        bad(entryName, "lower-triangle entry does not negate the upper triangle");
                }
            }
            if (upper.empty()) continue;
            entries[(std::size_t)(i * n + j)] = upper;
            entries[(std::size_t)(j * n + i)] =
                parseAt("-(" + to_string(upper) + ")", sys, entryName);
        }
    for (auto& e : entries)
        if (e.empty()) e = parse("0", n);
    return std::make_shared<ExprMatrixField>(std::move(entries), n, sys.params);
}

DomainPredicate::Constraint loadDomainConstraint(const std::string& text,
                                                 const SystemDefinition& sys,
                                                 const std::string& where) {
    // Accepted forms: "<expr> > 0", "<expr> < 0", "<expr> != 0".
    auto make = [&](const std::string& lhs, DomainPredicate::Kind kind, bool negate) {
        const std::string body = negate ? "-(" + lhs + ")" : lhs;
        return DomainPredicate::Constraint{
            std::make_shared<ExprScalarField>(parseAt(body, sys, where), sys.params), kind};
    };
    auto ends_with_zero = [&](std::size_t pos, std::size_t oplen) {
        std::string rhs = text.substr(pos + oplen);
        rhs.erase(0, rhs.find_first_not_of(" \t"));
        rhs.erase(rhs.find_last_not_of(" \t") + 1);
        return rhs == "0";
    };
    if (auto pos = text.find("!="); pos != std::string::npos && ends_with_zero(pos, 2))
        return make(text.substr(0, pos), DomainPredicate::Kind::Nonzero, false);
    if (auto pos = text.find('>'); pos != std::string::npos && ends_with_zero(pos, 1))
        return make(text.substr(0, pos), DomainPredicate::Kind::Positive, false);
    if (auto pos = text.find('<'); pos != std::string::npos && ends_with_zero(pos, 1))
        return make(text.substr(0, pos), DomainPredicate::Kind::Positive, true);
    bad(where, "expected \"<expr> > 0\", \"<expr> < 0\", or \"<expr> != 0\"");
}

}  // namespace

SystemDefinition load_system(const json& doc) {
    SystemDefinition sys;
    if (!doc.is_object()) bad("$", "document must be a JSON object");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        bad("dimension", "required integer");
    if (!doc.contains("k") || !doc["k"].is_number_integer()) bad("k", "required integer");
    sys.n = doc["dimension"].get<int>();
    sys.k = doc["k"].get<int>();
    if (sys.n < 1 || sys.k < 1) bad("dimension/k", "must be positive");
    sys.name = doc.value("name", "unnamed");
    if (doc.contains("coordinates")) {
        for (const auto& c : doc["coordinates"]) sys.coords.push_back(c.get<std::string>());
        if ((int)sys.coords.size() != sys.n) bad("coordinates", "need one name per dimension");
    } else {
        sys.coords = defaultCoords(sys.n);
    }
    if (doc.contains("parameters")) {
        if (!doc["parameters"].is_object()) bad("parameters", "must be an object");
        for (const auto& [key, v] : doc["parameters"].items()) sys.params[key] = v.get<double>();
    }

    if (!doc.contains("forms")) bad("forms", "required");
    sys.structure.n = sys.n;
    sys.structure.k = sys.k;
    if (doc["forms"].is_string()) {
        sys.native_forms = doc["forms"].get<std::string>();
        if (sys.native_forms == "schwarz-coframe") {
            CatalogEntry sch = catalog_load("schwarz");
            if (sys.n != sch.n || sys.k != sch.k)
                bad("forms", "schwarz-coframe requires dimension 6 and k 3");
            sys.structure = sch.structure;
            sys.domain = sch.domain;
        } else {
            bad("forms", "unknown native form family '" + sys.native_forms + "'");
        }
    } else {
        if (!doc["forms"].is_array() || (int)doc["forms"].size() != sys.k)
            bad("forms", "expected k matrices");
        for (int a = 0; a < sys.k; ++a)
            sys.structure.forms.push_back(
                loadForm(doc["forms"][(std::size_t)a], sys, "forms[" + std::to_string(a) + "]"));
    }

    if (doc.contains("hamiltonian")) {
        if (!doc["hamiltonian"].is_array() || (int)doc["hamiltonian"].size() != sys.k)
            bad("hamiltonian", "expected k expression strings");
        KFunction h;
        h.n = sys.n;
        h.k = sys.k;
        for (int a = 0; a < sys.k; ++a)
            h.components.push_back(std::make_shared<ExprScalarField>(
                parseAt(doc["hamiltonian"][(std::size_t)a].get<std::string>(), sys,
                        "hamiltonian[" + std::to_string(a) + "]"),
                sys.params));
        sys.hamiltonian = std::move(h);
    }
    if (doc.contains("dynamics")) {
        if (!doc["dynamics"].is_array() || (int)doc["dynamics"].size() != sys.n)
            bad("dynamics", "expected n expression strings");
        std::vector<Expression> comps;
        for (int i = 0; i < sys.n; ++i)
            comps.push_back(parseAt(doc["dynamics"][(std::size_t)i].get<std::string>(), sys,
                                    "dynamics[" + std::to_string(i) + "]"));
        sys.dynamics = std::make_shared<ExprVectorField>(std::move(comps), sys.n, sys.params);
    }

    if (doc.contains("symmetry")) {
        const auto& sm = doc["symmetry"];
        if (!sm.is_object()) bad("symmetry", "must be an object");
        SymmetryModel S;
        if (!sm.contains("generators") || !sm["generators"].is_array())
            bad("symmetry.generators", "required array");
        S.g_dim = (int)sm["generators"].size();
        for (int g = 0; g < S.g_dim; ++g) {
            const auto& gen = sm["generators"][(std::size_t)g];
            if (!gen.is_array() || (int)gen.size() != sys.n)
                bad("symmetry.generators[" + std::to_string(g) + "]",
                    "expected n expression strings");
            std::vector<Expression> comps;
            for (int i = 0; i < sys.n; ++i)
                comps.push_back(parseAt(gen[(std::size_t)i].get<std::string>(), sys,
                                        "symmetry.generators[" + std::to_string(g) + "]"));
            S.generators.push_back(
                std::make_shared<ExprVectorField>(std::move(comps), sys.n, sys.params));
        }
        if (sm.contains("structure_constants")) {
            const auto& sc = sm["structure_constants"];
            if (!sc.is_array() || (int)sc.size() != S.g_dim)
                bad("symmetry.structure_constants", "expected g matrices c[l][i][j]");
            std::vector<Mat> c;
            for (int l = 0; l < S.g_dim; ++l) {
                Mat m(S.g_dim, S.g_dim);
                for (int i = 0; i < S.g_dim; ++i)
                    for (int j = 0; j < S.g_dim; ++j)
                        m(i, j) = sc[(std::size_t)l][(std::size_t)i][(std::size_t)j].get<double>();
                c.push_back(std::move(m));
            }
            S.structure_constants = std::move(c);
        }
        if (!sm.contains("momentum")) bad("symmetry.momentum", "required");
        if (sm["momentum"].is_string()) {
            if (sm["momentum"].get<std::string>() != "differential")
                bad("symmetry.momentum", "string form must be \"differential\"");
            S.momentum.mode = Momentum::Mode::Differential;
        } else {
            if (!sm["momentum"].is_array() || (int)sm["momentum"].size() != sys.k)
                bad("symmetry.momentum", "expected k rows of g expression strings");
            S.momentum.mode = Momentum::Mode::Explicit;
            for (int a = 0; a < sys.k; ++a) {
                const auto& row = sm["momentum"][(std::size_t)a];
                if (!row.is_array() || (int)row.size() != S.g_dim)
                    bad("symmetry.momentum[" + std::to_string(a) + "]",
                        "expected g expression strings");
                for (int i = 0; i < S.g_dim; ++i)
                    S.momentum.J.push_back(std::make_shared<ExprScalarField>(
                        parseAt(row[(std::size_t)i].get<std::string>(), sys,
                                "symmetry.momentum[" + std::to_string(a) + "]"),
                        sys.params));
            }
        }
        sys.symmetry = std::move(S);
    }

    if (doc.contains("domain")) {
        for (const auto& d : doc["domain"])
            sys.domain.constraints.push_back(
                loadDomainConstraint(d.get<std::string>(), sys, "domain"));
    }
    if (doc.contains("seeds"))
        for (const auto& s : doc["seeds"]) sys.seeds.push_back(parseVec(s, sys.n, "seeds"));
    if (doc.contains("levels")) {
        for (const auto& l : doc["levels"]) {
            LevelSpec spec;
            spec.seed = parseVec(l.at("seed"), sys.n, "levels.seed");
            if (l.contains("mu")) {
                const int m = (int)l["mu"].size();
                spec.mu = parseVec(l["mu"], m, "levels.mu");
            }
            sys.levels.push_back(std::move(spec));
        }
    }
    return sys;
}

SystemDefinition load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open system file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw InputError("malformed JSON in '" + path + "': " + ex.what());
    }
    return load_system(doc);
}

namespace {

std::string exprText(const ScalarFieldPtr& f) {
    if (auto e = std::dynamic_pointer_cast<const ExprScalarField>(f))
        return to_string(e->expression());
    throw InputError("export: scalar field is not expression-backed");
}

json fieldToJson(const VectorFieldPtr& f) {
    auto e = std::dynamic_pointer_cast<const ExprVectorField>(f);
    if (!e) throw InputError("export: vector field is not expression-backed");
    json arr = json::array();
    for (const auto& c : e->components()) arr.push_back(to_string(c));
    return arr;
}

json formToJson(const MatrixFieldPtr& f, int n) {
    json rows = json::array();
    if (auto cm = std::dynamic_pointer_cast<const ConstantMatrixField>(f)) {
        const Mat A = cm->value(Vec::Zero(n));
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) {
                if (j > i || A(i, j) == 0.0) {
                    std::ostringstream os;
                    os.precision(17);
                    os << A(i, j);
                    row.push_back(j > i && A(i, j) != 0.0 ? os.str() : "0");
                } else {
                    row.push_back("");  // lower triangle filled by skewness
                }
            }
            rows.push_back(std::move(row));
        }
        return rows;
    }
    if (auto em = std::dynamic_pointer_cast<const ExprMatrixField>(f)) {
        for (int i = 0; i < n; ++i) {
            json row = json::array();
            for (int j = 0; j < n; ++j) row.push_back(j >= i ? to_string(em->entry(i, j)) : "");
            rows.push_back(std::move(row));
        }
        return rows;
    }
    throw InputError("export: form is not expression-backed");
}

}  // namespace

json system_to_json(const CatalogEntry& entry) {
    json doc;
    doc["name"] = entry.id;
    doc["dimension"] = entry.n;
    doc["k"] = entry.k;
    doc["coordinates"] = entry.coords;
    if (!entry.params.empty()) doc["parameters"] = entry.params;
    if (entry.id == "schwarz") {
        doc["forms"] = "schwarz-coframe";
    } else {
        json forms = json::array();
        for (const auto& f : entry.structure.forms) forms.push_back(formToJson(f, entry.n));
        doc["forms"] = forms;
    }
    if (entry.hamiltonian) {
        json h = json::array();
        for (const auto& c : entry.hamiltonian->components) h.push_back(exprText(c));
        doc["hamiltonian"] = h;
    }
    if (entry.dynamics) doc["dynamics"] = fieldToJson(entry.dynamics);
    if (entry.symmetry) {
        json sm;
        json gens = json::array();
        for (const auto& g : entry.symmetry->generators) gens.push_back(fieldToJson(g));
        sm["generators"] = gens;
        if (entry.symmetry->structure_constants) {
            json sc = json::array();
            for (const Mat& m : *entry.symmetry->structure_constants) {
                json rows = json::array();
                for (int i = 0; i < m.rows(); ++i) {
                    json row = json::array();
                    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
                    rows.push_back(std::move(row));
                }
                sc.push_back(std::move(rows));
            }
            sm["structure_constants"] = sc;
        }
        if (entry.symmetry->explicit_momentum()) {
            json mom = json::array();
            for (int a = 0; a < entry.k; ++a) {
                json row = json::array();
                for (int i = 0; i < entry.symmetry->g_dim; ++i)
                    row.push_back(
                        exprText(entry.symmetry->momentum.J[(std::size_t)(a * entry.symmetry->g_dim + i)]));
                mom.push_back(std::move(row));
            }
            sm["momentum"] = mom;
        } else {
            sm["momentum"] = "differential";
        }
        doc["symmetry"] = sm;
    }
    if (!entry.domain.constraints.empty() && entry.id != "schwarz") {
        json dom = json::array();
        for (const auto& c : entry.domain.constraints) {
            auto e = std::dynamic_pointer_cast<const ExprScalarField>(c.field);
            if (!e) continue;
            dom.push_back(to_string(e->expression()) +
                          (c.kind == DomainPredicate::Kind::Positive ? " > 0" : " != 0"));
        }
        doc["domain"] = dom;
    }
    if (!entry.equilibrium_seeds.empty()) {
        json seeds = json::array();
        for (const Vec& s : entry.equilibrium_seeds)
            seeds.push_back(std::vector<double>(s.data(), s.data() + s.size()));
        doc["seeds"] = seeds;
    }
    if (entry.level) {
        json lv;
        lv["seed"] = std::vector<double>(entry.level->seed.data(),
                                         entry.level->seed.data() + entry.level->seed.size());
        if (entry.level->mu.size() > 0)
            lv["mu"] = std::vector<double>(entry.level->mu.data(),
                                           entry.level->mu.data() + entry.level->mu.size());
        doc["levels"] = json::array({lv});
    }
    return doc;
}

// -------------------------------------------------------------- report JSON

json report_envelope(const std::string& kind, std::uint64_t seed, const ToleranceConfig& cfg) {
    json doc;
    doc["report"] = kind;
    doc["tool_version"] = kVersion;
    doc["seed"] = seed;
    doc["tolerances"] = {
        {"rank_rel", cfg.rank_rel}, {"eq_tol", cfg.eq_tol}, {"eig_tol", cfg.eig_tol}};
    return doc;
}

namespace {
json vecToJson(const Vec& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}
}  // namespace

json to_json(const StructureReport& rep) {
    json doc;
    doc["pass"] = rep.pass;
    doc["skew_tol"] = rep.skew_tol;
    doc["closed_tol"] = rep.closed_tol;
    json pts = json::array();
    for (const auto& p : rep.points) {
        pts.push_back({{"point", vecToJson(p.point)},
                       {"skew", p.skew},
                       {"closed", p.closed},
                       {"joint_kernel_trivial", p.joint_kernel_trivial},
                       {"skew_defect", p.skew_defect},
                       {"closed_defect", p.closed_defect},
                       {"kernel_dims", p.kernel_dims},
                       {"joint_kernel_dim", p.joint_kernel_dim}});
    }
    doc["points"] = pts;
    return doc;
}

json to_json(const MomentumCheck& chk) {
    json doc;
    doc["pass"] = chk.pass;
    doc["tol"] = chk.tol;
    json rows = json::array();
    for (int a = 0; a < chk.defects.rows(); ++a) {
        json row = json::array();
        for (int i = 0; i < chk.defects.cols(); ++i) row.push_back(chk.defects(a, i));
        rows.push_back(std::move(row));
    }
    doc["defects"] = rows;
    return doc;
}

json to_json(const ReductionReport& rep) {
    json doc;
    doc["condition_A"] = rep.condition_A;
    doc["condition_B"] = rep.condition_B;
    doc["blacker"] = rep.blacker;
    doc["cocycle_warning"] = rep.cocycle_warning;
    json pts = json::array();
    for (const auto& p : rep.points) {
        pts.push_back({{"point", vecToJson(p.point)},
                       {"condition_A", p.condition_A},
                       {"condition_B", p.condition_B},
                       {"blacker", p.blacker},
                       {"level_dim", p.dims.level_dim},
                       {"isotropy_orbit_dim", p.dims.isotropy_orbit_dim},
                       {"reduced_dim", p.dims.reduced_dim},
                       {"form_ranks", p.dims.form_ranks},
                       {"joint_kernel_dim", p.dims.joint_kernel_dim}});
    }
    doc["points"] = pts;
    return doc;
}

json to_json(const RelativeEquilibrium& eq) {
    json doc;
    doc["z"] = vecToJson(eq.z);
    doc["xi"] = vecToJson(eq.xi);
    if (eq.mu_e.size() > 0) doc["mu_e"] = vecToJson(eq.mu_e);
    doc["residual"] = eq.residual;
    doc["accepted"] = eq.accepted;
    doc["xi_in_isotropy"] = eq.xi_in_isotropy;
    doc["family_nullity"] = eq.family_nullity;
    return doc;
}

json to_json(const StabilityReport& rep) {
    json doc;
    doc["equilibrium"] = to_json(rep.eq);
    doc["classification"] = to_string(rep.classification);
    doc["spanning_ok"] = rep.spanning_ok;
    doc["level_dim"] = rep.level_dim;
    json per = json::array();
    for (std::size_t a = 0; a < rep.verdicts.size(); ++a) {
        per.push_back({{"supplement_dim", rep.supplements[a].dim()},
                       {"spectrum", vecToJson(rep.spectra[a])},
                       {"verdict", to_string(rep.verdicts[a])}});
    }
    doc["per_form"] = per;
    return doc;
}

json to_json(const ConservationReport& rep) {
    json doc;
    doc["pass"] = rep.pass;
    doc["tol"] = rep.tol;
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back(
            {{"name", e.name}, {"initial", e.initial}, {"max_drift", e.max_drift}});
    doc["quantities"] = entries;
    return doc;
}

json to_json(const std::vector<ClaimResult>& results) {
    json arr = json::array();
    for (const auto& r : results)
        arr.push_back({{"claim", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    return arr;
}

}  // namespace psmech
