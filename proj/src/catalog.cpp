#include "psmech/catalog.hpp"

#include "psmech/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psmech {

namespace {

// ------------------------------------------------------------- small builders

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

ScalarFieldPtr sfield(const std::string& text, int n, const ParamMap& pm = {},
                      const std::vector<std::string>& names = {}) {
    return std::make_shared<ExprScalarField>(parse(text, n, pm, names), pm);
}

VectorFieldPtr vfield(const std::vector<std::string>& comps, int n, const ParamMap& pm = {},
                      const std::vector<std::string>& names = {}) {
    std::vector<Expression> es;
    es.reserve(comps.size());
    for (const auto& c : comps) es.push_back(parse(c, n, pm, names));
    return std::make_shared<ExprVectorField>(std::move(es), n, pm);
}

struct SkewEntry {
    int i, j;  // 1-based
    std::string expr;
};

// Constant skew matrix from upper-triangle coefficients (1-based indices).
MatrixFieldPtr constForm(int n, const std::vector<std::tuple<int, int, double>>& entries) {
    Mat A = Mat::Zero(n, n);
    for (const auto& [i, j, c] : entries) {
        A(i - 1, j - 1) = c;
        A(j - 1, i - 1) = -c;
    }
    return std::make_shared<ConstantMatrixField>(std::move(A));
}

MatrixFieldPtr exprForm(int n, const std::vector<SkewEntry>& entries, const ParamMap& pm = {},
                        const std::vector<std::string>& names = {}) {
    std::vector<Expression> es((std::size_t)(n * n));
    for (const auto& e : entries) {
        es[(std::size_t)((e.i - 1) * n + (e.j - 1))] = parse(e.expr, n, pm, names);
        es[(std::size_t)((e.j - 1) * n + (e.i - 1))] = parse("-(" + e.expr + ")", n, pm, names);
    }
    for (auto& e : es)
        if (e.empty()) e = parse("0", n, pm, names);
    return std::make_shared<ExprMatrixField>(std::move(es), n, pm);
}

DomainPredicate::Constraint positive(const std::string& text, int n, const ParamMap& pm,
                                     const std::vector<std::string>& names) {
    return {sfield(text, n, pm, names), DomainPredicate::Kind::Positive};
}
DomainPredicate::Constraint nonzero(const std::string& text, int n, const ParamMap& pm,
                                    const std::vector<std::string>& names) {
    return {sfield(text, n, pm, names), DomainPredicate::Kind::Nonzero};
}

Vec vec(std::initializer_list<double> v) {
    Vec out((int)v.size());
    int i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

ClaimResult ok(const std::string& name, const std::string& detail = "") {
    return {name, true, detail};
}
ClaimResult fail(const std::string& name, const std::string& detail) {
    return {name, false, detail};
}

// ------------------------------------------------------- Schwarz frame fields

// The coframe eta^1..eta^6 dual to the symmetry frame Y_1..Y_6 is obtained by
// inverting the 6x6 matrix of Y components at each point; the forms are the
// exterior derivatives of selected eta rows, assembled by differentiating
// through the inverse with dual numbers.
struct SchwarzFrame {
    int n = 6;
    std::vector<std::vector<Expression>> ycols;  // ycols[b][j] = (Y_b)_j

    template <class S>
    std::vector<std::vector<S>> coframe(const Vec& x) const {
        std::vector<S> xs;
        xs.reserve((std::size_t)n);
        for (int i = 0; i < n; ++i) xs.push_back(make_variable<S>(x(i), i, n));
        std::vector<std::vector<S>> a((std::size_t)n, std::vector<S>());
        for (int j = 0; j < n; ++j) {
            a[(std::size_t)j].reserve((std::size_t)n);
            for (int b = 0; b < n; ++b)
                a[(std::size_t)j].push_back(eval_generic<S>(ycols[(std::size_t)b][(std::size_t)j], xs, {}));
        }
        // Gauss-Jordan with partial pivoting, generic over the scalar type.
        std::vector<std::vector<S>> inv((std::size_t)n);
        for (int r = 0; r < n; ++r) {
            inv[(std::size_t)r].assign((std::size_t)n, make_constant<S>(0.0, n));
            inv[(std::size_t)r][(std::size_t)r] = make_constant<S>(1.0, n);
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(value_of(a[(std::size_t)r][(std::size_t)col])) >
                    std::abs(value_of(a[(std::size_t)piv][(std::size_t)col])))
                    piv = r;
            if (std::abs(value_of(a[(std::size_t)piv][(std::size_t)col])) < 1e-13)
                throw DomainError("frame matrix is singular", "Y1^...^Y6");
            std::swap(a[(std::size_t)piv], a[(std::size_t)col]);
            std::swap(inv[(std::size_t)piv], inv[(std::size_t)col]);
            const S d = a[(std::size_t)col][(std::size_t)col];
            for (int c = 0; c < n; ++c) {
                a[(std::size_t)col][(std::size_t)c] = a[(std::size_t)col][(std::size_t)c] / d;
                inv[(std::size_t)col][(std::size_t)c] = inv[(std::size_t)col][(std::size_t)c] / d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const S f = a[(std::size_t)r][(std::size_t)col];
                for (int c = 0; c < n; ++c) {
                    a[(std::size_t)r][(std::size_t)c] =
                        a[(std::size_t)r][(std::size_t)c] - f * a[(std::size_t)col][(std::size_t)c];
                    inv[(std::size_t)r][(std::size_t)c] =
                        inv[(std::size_t)r][(std::size_t)c] - f * inv[(std::size_t)col][(std::size_t)c];
                }
            }
        }
        return inv;  // row a = coefficients of eta^a
    }

    double det(const Vec& x) const {
        std::vector<double> xs(x.data(), x.data() + x.size());
        Mat Y(n, n);
        for (int j = 0; j < n; ++j)
            for (int b = 0; b < n; ++b)
                Y(j, b) = eval_generic<double>(ycols[(std::size_t)b][(std::size_t)j], xs, {});
        return Y.determinant();
    }
};

class SchwarzCoframeForm final : public MatrixField {
public:
    SchwarzCoframeForm(std::shared_ptr<const SchwarzFrame> frame, int eta_index)
        : frame_(std::move(frame)), a_(eta_index) {}

    int dim() const override { return 6; }

    Mat value(const Vec& x) const override {
        const auto H = frame_->coframe<Dual1>(x);
        const auto& eta = H[(std::size_t)a_];
        Mat A(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                A(i, j) = eta[(std::size_t)j].g(i) - eta[(std::size_t)i].g(j);
        return A;
    }

    std::vector<Mat> derivative(const Vec& x) const override {
        const auto H = frame_->coframe<Dual2>(x);
        const auto& eta = H[(std::size_t)a_];
        std::vector<Mat> d(6, Mat::Zero(6, 6));
        for (int l = 0; l < 6; ++l)
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j)
                    d[(std::size_t)l](i, j) =
                        eta[(std::size_t)j].h(i, l) - eta[(std::size_t)i].h(j, l);
        return d;
    }

private:
    std::shared_ptr<const SchwarzFrame> frame_;
    int a_;
};

class SchwarzFrameDet final : public ScalarField {
public:
    explicit SchwarzFrameDet(std::shared_ptr<const SchwarzFrame> frame)
        : frame_(std::move(frame)) {}
    int dim() const override { return 6; }
    double value(const Vec& x) const override { return frame_->det(x); }
    Vec gradient(const Vec& x) const override {
        Vec g(6);
        const double step = 1e-6 * (1.0 + x.norm());
        for (int i = 0; i < 6; ++i) {
            Vec xp = x, xm = x;
            xp(i) += step;
            xm(i) -= step;
            g(i) = (frame_->det(xp) - frame_->det(xm)) / (2 * step);
        }
        return g;
    }
    Mat hessian(const Vec&) const override {
        throw Error("frame determinant: hessian not supported");
    }

private:
    std::shared_ptr<const SchwarzFrame> frame_;
};

// ------------------------------------------------------- shared claim makers

Claim claimStructure(int points = 20) {
    return {"structure-valid", [points](const CatalogEntry& e, std::mt19937_64& rng) {
                auto pts = catalog_sample_points(e, points, rng);
                const StructureReport rep = verify_structure(e.structure, pts);
                if (rep.pass) return ok("structure-valid");
                std::ostringstream os;
                for (const auto& p : rep.points)
                    if (!(p.skew && p.closed && p.joint_kernel_trivial))
                        os << "skew=" << p.skew << " closed=" << p.closed
                           << " joint_kernel=" << p.joint_kernel_dim << "; ";
                return fail("structure-valid", os.str());
            }};
}

Claim claimMomentum(int points = 20) {
    return {"momentum-valid", [points](const CatalogEntry& e, std::mt19937_64& rng) {
                auto pts = catalog_sample_points(e, points, rng);
                const MomentumCheck chk = verify_momentum(e.structure, *e.symmetry, pts);
                if (chk.pass) return ok("momentum-valid");
                std::ostringstream os;
                os << "max defect " << chk.defects.maxCoeff();
                return fail("momentum-valid", os.str());
            }};
}

Claim claimLemmaIdentities(int points = 20) {
    return {"lemma-identities", [points](const CatalogEntry& e, std::mt19937_64& rng) {
                auto pts = catalog_level_points(e, points, rng);
                for (const Vec& x : pts) {
                    const LemmaIdentities li = lemma_identities(e.structure, *e.symmetry, x);
                    if (!li.isotropy_is_orbit_meet_level || !li.level_is_orbit_perp) {
                        std::ostringstream os;
                        os << "identity(1)=" << li.isotropy_is_orbit_meet_level
                           << " identity(2)=" << li.level_is_orbit_perp;
                        return fail("lemma-identities", os.str());
                    }
                }
                return ok("lemma-identities");
            }};
}

std::string boolvec(const std::vector<bool>& v) {
    std::string s = "[";
    for (bool b : v) s += b ? "T" : "F";
    return s + "]";
}

Claim claimConditions(std::vector<bool> expectA, bool expectB,
                      std::optional<bool> expectBlacker, int points = 20) {
    return {"reduction-conditions",
            [=](const CatalogEntry& e, std::mt19937_64& rng) {
                auto pts = catalog_level_points(e, points, rng);
                const ReductionReport rep = reduction_report(e.structure, *e.symmetry, pts);
                std::ostringstream os;
                os << "A=" << boolvec(rep.condition_A) << " B=" << rep.condition_B
                   << " blacker=" << rep.blacker;
                if (rep.condition_A != expectA || rep.condition_B != expectB ||
                    (expectBlacker && rep.blacker != *expectBlacker))
                    return fail("reduction-conditions",
                                os.str() + " expected A=" + boolvec(expectA) +
                                    " B=" + (expectB ? std::string("1") : std::string("0")));
                return ok("reduction-conditions", os.str());
            }};
}

Claim claimReducedDims(int reduced_dim, std::vector<int> ranks, int joint_kernel,
                       int points = 10) {
    return {"reduced-structure",
            [=](const CatalogEntry& e, std::mt19937_64& rng) {
                auto pts = catalog_level_points(e, points, rng);
                for (const Vec& x : pts) {
                    const ReducedStructure rs = reduced_structure_ranks(e.structure, *e.symmetry, x);
                    std::ostringstream os;
                    os << "dim=" << rs.reduced_dim << " ranks=[";
                    for (int r : rs.form_ranks) os << r << " ";
                    os << "] joint_kernel=" << rs.joint_kernel_dim;
                    if (rs.reduced_dim != reduced_dim || rs.form_ranks != ranks ||
                        rs.joint_kernel_dim != joint_kernel)
                        return fail("reduced-structure", os.str());
                }
                return ok("reduced-structure");
            }};
}

// ------------------------------------------------------------------- entries

// Two-polysymplectic structure on R^3 with rational coefficient forms; the
// solves must reproduce the two printed Hamiltonian fields.
CatalogEntry buildExample23() {
    CatalogEntry e;
    e.id = "example-2-3-r3";
    e.title = "rational two-polysymplectic structure on R^3";
    e.n = 3;
    e.k = 2;
    e.coords = {"u", "v", "w"};
    const auto& nm = e.coords;
    e.structure.n = 3;
    e.structure.k = 2;
    e.structure.forms = {
        exprForm(3, {{1, 3, "-4*w/v^2"}, {2, 3, "1/v"}, {1, 2, "4*w^2/v^3"}}, {}, nm),
        exprForm(3, {{1, 3, "-4/v^2"}, {1, 2, "8*w/v^3"}}, {}, nm)};
    KFunction f;
    f.n = 3;
    f.k = 2;
    f.components = {sfield("4*u*w - 8*u^2*w^2/v^2 - v^2/2", 3, {}, nm),
                    sfield("4*u - 16*u^2*w/v^2", 3, {}, nm)};
    e.hamiltonian = f;
    e.dynamics = vfield({"4*u^2", "4*u*v", "v^2"}, 3, {}, nm);
    e.domain.constraints = {nonzero("v", 3, {}, nm)};
    e.box_lo = vec({-1.5, 0.4, -1.5});
    e.box_hi = vec({1.5, 1.8, 1.5});
    e.sample_margin = 0.05;

    e.claims.push_back(claimStructure());
    e.claims.push_back({"solve-reproduces-fields", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 20, rng);
        KFunction g;
        g.n = 3;
        g.k = 2;
        g.components = {sfield("-2*w^2/v^2", 3, {}, e.coords),
                        sfield("-4*w/v^2", 3, {}, e.coords)};
        const auto X2 = vfield({"1", "0", "0"}, 3, {}, e.coords);
        for (const Vec& x : pts) {
            const Vec Xf = hamiltonian_field_checked(e.structure, *e.hamiltonian, x);
            if ((Xf - e.dynamics->value(x)).norm() > 1e-8 * (1 + Xf.norm()))
                return fail("solve-reproduces-fields", "X_f mismatch");
            const Vec Xg = hamiltonian_field_checked(e.structure, g, x);
            if ((Xg - X2->value(x)).norm() > 1e-8)
                return fail("solve-reproduces-fields", "X_g mismatch");
        }
        return ok("solve-reproduces-fields");
    }});
    e.claims.push_back({"derivation-property", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 20, rng);
        KFunction g;
        g.n = 3;
        g.k = 2;
        g.components = {sfield("-2*w^2/v^2", 3, {}, e.coords),
                        sfield("-4*w/v^2", 3, {}, e.coords)};
        const double d = derivation_check(e.structure, *e.hamiltonian, g, pts);
        return d < 1e-6 ? ok("derivation-property")
                        : fail("derivation-property", "defect " + num(d));
    }});
    e.claims.push_back({"X2-is-hamiltonian-field", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 20, rng);
        const auto X2 = vfield({"1", "0", "0"}, 3, {}, e.coords);
        const auto chk = is_hamiltonian_field(e.structure, *X2, pts);
        return chk.all() ? ok("X2-is-hamiltonian-field")
                         : fail("X2-is-hamiltonian-field", "closedness defect");
    }});
    return e;
}

// R^4 counterexample: condition B holds while condition A fails for the second
// form; the quotient is one-dimensional and both reduced forms vanish.
CatalogEntry buildR4() {
    CatalogEntry e;
    e.id = "counterexample-r4";
    e.title = "R^4 counterexample (B without A)";
    e.n = 4;
    e.k = 2;
    e.coords = {"x", "y", "z", "t"};
    e.structure.n = 4;
    e.structure.k = 2;
    e.structure.forms = {constForm(4, {{1, 2, 1}}), constForm(4, {{1, 4, 1}, {2, 3, 1}})};
    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {vfield({"1", "0", "0", "0"}, 4, {}, e.coords)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("y", 4, {}, e.coords), sfield("t", 4, {}, e.coords)};
    e.symmetry = S;
    e.level = LevelSpec{vec({1.1, 0.7}), vec({0.3, 1.1, -0.4, 0.7})};
    e.box_lo = vec({-1.5, -1.5, -1.5, -1.5});
    e.box_hi = vec({1.5, 1.5, 1.5, 1.5});

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back({"kernel-dims", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 5, rng);
        const StructureReport rep = verify_structure(e.structure, pts);
        for (const auto& p : rep.points)
            if (p.kernel_dims != std::vector<int>{2, 0})
                return fail("kernel-dims", "expected ker dims {2,0}");
        return ok("kernel-dims");
    }});
    e.claims.push_back(claimConditions({true, false}, true, false));
    e.claims.push_back(claimReducedDims(1, {0, 0}, 1));
    e.claims.push_back(claimLemmaIdentities());
    return e;
}

// R^6 example: condition A holds for both forms while condition B fails.
CatalogEntry buildR6() {
    CatalogEntry e;
    e.id = "example-r6";
    e.title = "R^6 example (A without B)";
    e.n = 6;
    e.k = 2;
    for (int i = 1; i <= 6; ++i) e.coords.push_back("x" + std::to_string(i));
    e.structure.n = 6;
    e.structure.k = 2;
    e.structure.forms = {constForm(6, {{1, 2, 1}, {5, 6, 1}}), constForm(6, {{3, 4, 1}, {5, 6, 1}})};
    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {vfield({"1", "0", "1", "0", "0", "0"}, 6)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("x2", 6), sfield("x4", 6)};
    e.symmetry = S;
    e.level = LevelSpec{vec({0.8, -0.6}), vec({0.2, 0.8, 0.5, -0.6, 0.1, 0.9})};
    e.box_lo = -1.5 * Vec::Ones(6);
    e.box_hi = 1.5 * Vec::Ones(6);

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back(claimConditions({true, true}, false, false));
    e.claims.push_back(claimLemmaIdentities());
    return e;
}

// R^7 example: reduction exists (Blacker equality holds) although condition A
// fails for the first form.
CatalogEntry buildR7() {
    CatalogEntry e;
    e.id = "example-r7";
    e.title = "R^7 example (reduction without A)";
    e.n = 7;
    e.k = 2;
    for (int i = 1; i <= 7; ++i) e.coords.push_back("x" + std::to_string(i));
    e.structure.n = 7;
    e.structure.k = 2;
    e.structure.forms = {constForm(7, {{1, 2, 1}, {5, 7, 1}, {3, 6, 1}}),
                         constForm(7, {{3, 4, 1}, {5, 6, 1}})};
    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {vfield({"0", "0", "0", "0", "1", "0", "0"}, 7)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("x7", 7), sfield("x6", 7)};
    e.symmetry = S;
    e.level = LevelSpec{vec({0.4, -0.9}), vec({0.3, -0.2, 0.7, 0.1, -0.5, -0.9, 0.4})};
    e.box_lo = -1.5 * Vec::Ones(7);
    e.box_hi = 1.5 * Vec::Ones(7);

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back(claimConditions({false, true}, true, true));
    e.claims.push_back(claimReducedDims(4, {2, 2}, 0));
    e.claims.push_back(claimLemmaIdentities());
    return e;
}

// Completely integrable separable system on R^{2k}: the momentum map has no
// regular points for k > 3 yet stays weakly regular with constant rank k-1;
// reduction leaves a single symplectic plane.
CatalogEntry buildIntegrable(const ParamMap& overrides) {
    int k = 4;
    if (auto it = overrides.find("k"); it != overrides.end()) k = (int)it->second;
    if (k < 2) throw InputError("integrable: k must be >= 2");
    CatalogEntry e;
    e.id = "integrable";
    e.title = "separable integrable system on R^{2k}";
    e.n = 2 * k;
    e.k = k;
    e.params["k"] = k;
    for (int i = 1; i <= k; ++i) e.coords.push_back("th" + std::to_string(i));
    for (int i = 1; i <= k; ++i) e.coords.push_back("I" + std::to_string(i));
    e.structure.n = e.n;
    e.structure.k = k;
    for (int a = 1; a <= k; ++a) e.structure.forms.push_back(constForm(e.n, {{a, k + a, 1}}));
    KFunction h;
    h.n = e.n;
    h.k = k;
    for (int a = 1; a <= k; ++a)
        h.components.push_back(sfield("I" + std::to_string(a) + "^2/2", e.n, {}, e.coords));
    e.hamiltonian = h;
    {
        std::vector<std::string> comps((std::size_t)e.n, "0");
        for (int a = 1; a <= k; ++a) comps[(std::size_t)(a - 1)] = "I" + std::to_string(a);
        e.dynamics = vfield(comps, e.n, {}, e.coords);
    }
    SymmetryModel S;
    S.g_dim = k - 1;
    for (int i = 1; i <= k - 1; ++i) {
        std::vector<std::string> comps((std::size_t)e.n, "0");
        comps[(std::size_t)(i - 1)] = "1";
        S.generators.push_back(vfield(comps, e.n, {}, e.coords));
    }
    S.structure_constants = std::vector<Mat>((std::size_t)(k - 1), Mat::Zero(k - 1, k - 1));
    S.momentum.mode = Momentum::Mode::Explicit;
    for (int a = 1; a <= k; ++a)
        for (int i = 1; i <= k - 1; ++i)
            S.momentum.J.push_back(
                sfield(a == i ? "I" + std::to_string(i) : "0", e.n, {}, e.coords));
    e.symmetry = S;
    Vec seed(e.n), mu = Vec::Zero(k * (k - 1));
    for (int i = 0; i < k; ++i) seed(i) = 0.2 + 0.1 * i;
    for (int i = 0; i < k; ++i) seed(k + i) = 0.7 + 0.2 * i;
    for (int a = 1; a <= k - 1; ++a) mu((a - 1) * (k - 1) + (a - 1)) = seed(k + a - 1);
    e.level = LevelSpec{mu, seed};
    e.box_lo = -1.5 * Vec::Ones(e.n);
    e.box_hi = 1.5 * Vec::Ones(e.n);

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back({"weak-regularity", [](const CatalogEntry& e, std::mt19937_64& rng) {
        const int k = (int)e.params.at("k");
        auto pts = catalog_level_points(e, 10, rng);
        const auto rep = weak_regularity_probe(e.structure, *e.symmetry, pts);
        std::ostringstream os;
        os << "rank=" << rep.rank << " constant=" << rep.constant_rank
           << " no_regular_certain=" << rep.no_regular_points_certain;
        if (!rep.constant_rank || rep.rank != k - 1) return fail("weak-regularity", os.str());
        if (k > 3 && !rep.no_regular_points_certain) return fail("weak-regularity", os.str());
        return ok("weak-regularity", os.str());
    }});
    e.claims.push_back({"reduced-one-symplectic-plane",
                        [](const CatalogEntry& e, std::mt19937_64& rng) {
        const int k = (int)e.params.at("k");
        auto pts = catalog_level_points(e, 5, rng);
        for (const Vec& x : pts) {
            const auto rs = reduced_structure_ranks(e.structure, *e.symmetry, x);
            std::vector<int> expect((std::size_t)k, 0);
            expect.back() = 2;
            if (rs.reduced_dim != 2 || rs.form_ranks != expect || rs.joint_kernel_dim != 0)
                return fail("reduced-one-symplectic-plane",
                            "dim=" + std::to_string(rs.reduced_dim));
        }
        return ok("reduced-one-symplectic-plane");
    }});
    {
        std::vector<bool> expectA((std::size_t)k, true);
        e.claims.push_back(claimConditions(expectA, true, true));
    }
    e.claims.push_back(claimLemmaIdentities());
    return e;
}

// Product of two symplectic planes with independent translations.
CatalogEntry buildProductSymplectic() {
    CatalogEntry e;
    e.id = "product-symplectic";
    e.title = "product of two symplectic planes";
    e.n = 4;
    e.k = 2;
    e.coords = {"q1", "p1", "q2", "p2"};
    e.structure.n = 4;
    e.structure.k = 2;
    e.structure.forms = {constForm(4, {{1, 2, 1}}), constForm(4, {{3, 4, 1}})};
    KFunction h;
    h.n = 4;
    h.k = 2;
    h.components = {sfield("p1^2/2", 4, {}, e.coords), sfield("p2^2/2", 4, {}, e.coords)};
    e.hamiltonian = h;
    e.dynamics = vfield({"p1", "0", "p2", "0"}, 4, {}, e.coords);
    SymmetryModel S;
    S.g_dim = 2;
    S.generators = {vfield({"1", "0", "0", "0"}, 4), vfield({"0", "0", "1", "0"}, 4)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(2, 2), Mat::Zero(2, 2)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("p1", 4, {}, e.coords), sfield("0", 4), sfield("0", 4),
                    sfield("p2", 4, {}, e.coords)};
    e.symmetry = S;
    e.level = LevelSpec{vec({0.6, 0, 0, 0.9}), vec({0.2, 0.6, -0.3, 0.9})};
    e.box_lo = -1.5 * Vec::Ones(4);
    e.box_hi = 1.5 * Vec::Ones(4);
    e.equilibrium_seeds = {vec({0.1, 0.5, 0.2, -0.4})};

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back(claimConditions({true, true}, true, true));
    e.claims.push_back(claimReducedDims(0, {0, 0}, 0));
    e.claims.push_back(claimLemmaIdentities());
    e.claims.push_back({"every-point-relative-equilibrium",
                        [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("every-point-relative-equilibrium", "no convergence");
        const auto& q = eqs.front();
        if (std::abs(q.xi(0) - q.z(1)) > 1e-8 || std::abs(q.xi(1) - q.z(3)) > 1e-8)
            return fail("every-point-relative-equilibrium", "xi != (p1,p2)");
        return ok("every-point-relative-equilibrium");
    }});
    return e;
}

// Spherical-chart angular momentum components for one oscillator factor.
struct OscillatorNames {
    std::string r, th, ph, pr, pth, pph;
};
OscillatorNames oscNames(int alpha) {
    const std::string s = std::to_string(alpha);
    return {"r" + s, "th" + s, "ph" + s, "pr" + s, "pth" + s, "pph" + s};
}

// Product of k isotropic oscillators in spherical charts, with the so(3)^k
// rotation action and angular-momentum momentum map.
CatalogEntry buildOscillators(const ParamMap& overrides) {
    int k = 1;
    if (auto it = overrides.find("k"); it != overrides.end()) k = (int)it->second;
    if (k < 1) throw InputError("oscillators: k must be >= 1");
    CatalogEntry e;
    e.id = "oscillators";
    e.title = "product of isotropic oscillators (spherical charts)";
    e.n = 6 * k;
    e.k = k;
    e.params["k"] = k;
    std::vector<double> b((std::size_t)k, 1.0);
    for (int a = 1; a <= k; ++a) {
        const std::string key = "b" + std::to_string(a);
        if (auto it = overrides.find(key); it != overrides.end()) b[(std::size_t)(a - 1)] = it->second;
        e.params[key] = b[(std::size_t)(a - 1)];
    }
    for (int a = 1; a <= k; ++a) {
        const auto nm = oscNames(a);
        e.coords.insert(e.coords.end(), {nm.r, nm.th, nm.ph, nm.pr, nm.pth, nm.pph});
    }
    const auto& names = e.coords;
    e.structure.n = e.n;
    e.structure.k = k;
    for (int a = 0; a < k; ++a) {
        const int o = 6 * a;
        e.structure.forms.push_back(
            constForm(e.n, {{o + 1, o + 4, 1}, {o + 2, o + 5, 1}, {o + 3, o + 6, 1}}));
    }
    KFunction h;
    h.n = e.n;
    h.k = k;
    std::vector<std::string> dyn((std::size_t)e.n);
    for (int a = 1; a <= k; ++a) {
        const auto nm = oscNames(a);
        const std::string b2 = num(b[(std::size_t)(a - 1)] * b[(std::size_t)(a - 1)]);
        h.components.push_back(sfield("(" + nm.pr + "^2 + " + nm.pph + "^2/(" + nm.r +
                                          "^2*sin(" + nm.th + ")^2) + " + nm.pth + "^2/" + nm.r +
                                          "^2 + " + b2 + "*" + nm.r + "^2)/2",
                                      e.n, {}, names));
        const int o = 6 * (a - 1);
        dyn[(std::size_t)(o + 0)] = nm.pr;
        dyn[(std::size_t)(o + 1)] = nm.pth + "/" + nm.r + "^2";
        dyn[(std::size_t)(o + 2)] = nm.pph + "/(" + nm.r + "^2*sin(" + nm.th + ")^2)";
        dyn[(std::size_t)(o + 3)] = nm.pph + "^2/(" + nm.r + "^3*sin(" + nm.th + ")^2) + " +
                                    nm.pth + "^2/" + nm.r + "^3 - " + b2 + "*" + nm.r;
        dyn[(std::size_t)(o + 4)] =
            nm.pph + "^2*cos(" + nm.th + ")/(" + nm.r + "^2*sin(" + nm.th + ")^3)";
        dyn[(std::size_t)(o + 5)] = "0";
    }
    e.hamiltonian = h;
    e.dynamics = vfield(dyn, e.n, {}, names);

    SymmetryModel S;
    S.g_dim = 3 * k;
    for (int a = 1; a <= k; ++a) {
        const auto nm = oscNames(a);
        const std::string cot = "cos(" + nm.th + ")/sin(" + nm.th + ")";
        std::vector<std::string> x1((std::size_t)e.n, "0"), x2((std::size_t)e.n, "0"),
            x3((std::size_t)e.n, "0");
        const int o = 6 * (a - 1);
        // X_{L1}: L1 = -pth sin(ph) - pph cos(ph) cot(th)
        x1[(std::size_t)(o + 1)] = "-sin(" + nm.ph + ")";
        x1[(std::size_t)(o + 2)] = "-cos(" + nm.ph + ")*" + cot;
        x1[(std::size_t)(o + 4)] = "-" + nm.pph + "*cos(" + nm.ph + ")/sin(" + nm.th + ")^2";
        x1[(std::size_t)(o + 5)] =
            nm.pth + "*cos(" + nm.ph + ") - " + nm.pph + "*sin(" + nm.ph + ")*" + cot;
        // X_{L2}: L2 = pth cos(ph) - pph sin(ph) cot(th)
        x2[(std::size_t)(o + 1)] = "cos(" + nm.ph + ")";
        x2[(std::size_t)(o + 2)] = "-sin(" + nm.ph + ")*" + cot;
        x2[(std::size_t)(o + 4)] = "-" + nm.pph + "*sin(" + nm.ph + ")/sin(" + nm.th + ")^2";
        x2[(std::size_t)(o + 5)] =
            nm.pth + "*sin(" + nm.ph + ") + " + nm.pph + "*cos(" + nm.ph + ")*" + cot;
        // X_{L3} = d/dph
        x3[(std::size_t)(o + 2)] = "1";
        S.generators.push_back(vfield(x1, e.n, {}, names));
        S.generators.push_back(vfield(x2, e.n, {}, names));
        S.generators.push_back(vfield(x3, e.n, {}, names));
    }
    // so(3)^k algebra constants: [e_i, e_j] = eps_ijl e_l within each factor.
    {
        std::vector<Mat> c((std::size_t)(3 * k), Mat::Zero(3 * k, 3 * k));
        for (int a = 0; a < k; ++a) {
            const int o = 3 * a;
            auto set = [&](int i, int j, int l, double v) {
                c[(std::size_t)(o + l)](o + i, o + j) = v;
                c[(std::size_t)(o + l)](o + j, o + i) = -v;
            };
            set(0, 1, 2, 1.0);
            set(1, 2, 0, 1.0);
            set(2, 0, 1, 1.0);
        }
        S.structure_constants = std::move(c);
    }
    S.momentum.mode = Momentum::Mode::Explicit;
    for (int a = 1; a <= k; ++a) {
        const auto nm = oscNames(a);
        const std::string cot = "cos(" + nm.th + ")/sin(" + nm.th + ")";
        const std::string L1 =
            "-" + nm.pth + "*sin(" + nm.ph + ") - " + nm.pph + "*cos(" + nm.ph + ")*" + cot;
        const std::string L2 =
            nm.pth + "*cos(" + nm.ph + ") - " + nm.pph + "*sin(" + nm.ph + ")*" + cot;
        for (int bta = 1; bta <= k; ++bta)
            for (int j = 0; j < 3; ++j) {
                const bool mine = bta == a;
                const std::string text = !mine ? "0" : (j == 0 ? L1 : (j == 1 ? L2 : nm.pph));
                S.momentum.J.push_back(sfield(text, e.n, {}, names));
            }
    }
    e.symmetry = S;

    const double pi2 = std::acos(0.0);  // pi/2
    Vec seed(e.n);
    Vec mu = Vec::Zero(k * 3 * k);
    for (int a = 0; a < k; ++a) {
        const int o = 6 * a;
        seed(o + 0) = 1.0;
        seed(o + 1) = pi2;
        seed(o + 2) = 0.3 + 0.2 * a;
        seed(o + 3) = 0.0;
        seed(o + 4) = 0.0;
        seed(o + 5) = b[(std::size_t)a];
        mu(a * 3 * k + 3 * a + 2) = b[(std::size_t)a];  // L3 = b r^2 at r = 1
    }
    e.level = LevelSpec{mu, seed};
    for (int a = 0; a < k; ++a) {
        const auto nm = oscNames(a + 1);
        e.domain.constraints.push_back(positive(nm.r, e.n, {}, names));
        e.domain.constraints.push_back(nonzero("sin(" + nm.th + ")", e.n, {}, names));
    }
    e.sample_margin = 0.15;
    e.box_lo = Vec(e.n);
    e.box_hi = Vec(e.n);
    for (int a = 0; a < k; ++a) {
        const int o = 6 * a;
        e.box_lo.segment(o, 6) = vec({0.7, 1.0, -1.0, -0.5, -0.5, 0.5});
        e.box_hi.segment(o, 6) = vec({1.5, 2.1, 1.0, 0.5, 0.5, 1.2});
    }
    {
        Vec s(e.n);
        for (int a = 0; a < k; ++a) {
            const int o = 6 * a;
            const double ba = b[(std::size_t)a];
            s.segment(o, 6) = vec({1.3, pi2, 0.7 + 0.3 * a, 0.1, 0.0, 0.9 * ba * 1.69});
        }
        e.equilibrium_seeds = {s};
    }

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back({"generator-bracket-closure", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        const double d = bracket_closure_check(*e.symmetry, pts);
        return d < 1e-8 ? ok("generator-bracket-closure")
                        : fail("generator-bracket-closure", "defect " + num(d));
    }});
    e.claims.push_back({"form-invariance", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        const double d = invariance_check(e.structure, *e.symmetry, pts);
        return d < 1e-8 ? ok("form-invariance") : fail("form-invariance", "defect " + num(d));
    }});
    e.claims.push_back({"cocycle-equivariant", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        const auto cc = infinitesimal_cocycle_check(e.structure, *e.symmetry, pts);
        if (cc.pass && cc.equivariant) return ok("cocycle-equivariant");
        return fail("cocycle-equivariant",
                    "grad=" + num(cc.max_gradient) + " value=" + num(cc.max_value));
    }});
    e.claims.push_back({"isotropy-dims", [](const CatalogEntry& e, std::mt19937_64& rng) {
        const int k = (int)e.params.at("k");
        auto pts = catalog_level_points(e, 5, rng);
        for (const Vec& x : pts) {
            if (orbit_tangent(*e.symmetry, x).dim() != 3 * k)
                return fail("isotropy-dims", "orbit dim != 3k");
            if (isotropy_algebra(e.structure, *e.symmetry, x).dim() != k)
                return fail("isotropy-dims", "joint isotropy dim != k");
        }
        return ok("isotropy-dims");
    }});
    e.claims.push_back({"rank-drop-at-zero-angular-momentum",
                        [](const CatalogEntry& e, std::mt19937_64&) {
        const int k = (int)e.params.at("k");
        Vec x = e.level->seed;
        for (int a = 0; a < k; ++a) x(6 * a + 5) = 0.0;  // pph = 0, pth already 0
        const auto rep = weak_regularity_probe(e.structure, *e.symmetry, {x});
        return rep.rank < 3 * k ? ok("rank-drop-at-zero-angular-momentum")
                                : fail("rank-drop-at-zero-angular-momentum",
                                       "rank=" + std::to_string(rep.rank));
    }});
    e.claims.push_back(claimConditions(std::vector<bool>((std::size_t)k, true), true, true));
    e.claims.push_back(claimLemmaIdentities());
    e.claims.push_back({"relative-equilibria", [](const CatalogEntry& e, std::mt19937_64&) {
        const int k = (int)e.params.at("k");
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty() || !eqs.front().accepted)
            return fail("relative-equilibria", "no accepted equilibrium");
        const auto& q = eqs.front();
        for (int a = 0; a < k; ++a) {
            const double ba = e.params.at("b" + std::to_string(a + 1));
            const int o = 6 * a;
            if (std::abs(q.z(o + 3)) > 1e-9 || std::abs(q.z(o + 4)) > 1e-9)
                return fail("relative-equilibria", "|p_r| or |p_th| too large");
            if (std::abs(q.z(o + 5) - ba * q.z(o) * q.z(o)) > 1e-8)
                return fail("relative-equilibria", "p_ph != b r^2");
        }
        return ok("relative-equilibria");
    }});
    e.claims.push_back({"formal-stability", [](const CatalogEntry& e, std::mt19937_64&) {
        const int k = (int)e.params.at("k");
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("formal-stability", "no equilibrium");
        const auto rep =
            classify_formal_stability(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        if (rep.classification != StabilityClass::FormallyStable)
            return fail("formal-stability", to_string(rep.classification));
        for (int a = 0; a < k; ++a) {
            const double ba = e.params.at("b" + std::to_string(a + 1));
            Vec expect = vec({1.0, 4.0 * ba * ba});
            std::sort(expect.data(), expect.data() + 2);
            Vec got = rep.spectra[(std::size_t)a];
            if (got.size() != 2) return fail("formal-stability", "supplement dim != 2");
            for (int i = 0; i < 2; ++i)
                if (std::abs(got(i) - expect(i)) > 1e-6 * std::abs(expect(i)))
                    return fail("formal-stability",
                                "spectrum {" + num(got(0)) + "," + num(got(1)) + "}");
        }
        return ok("formal-stability");
    }});
    e.claims.push_back({"gauge-degeneracy", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("gauge-degeneracy", "no equilibrium");
        const double d =
            gauge_degeneracy_check(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        return d < 1e-7 ? ok("gauge-degeneracy") : fail("gauge-degeneracy", "defect " + num(d));
    }});

    // Reduced radial system for the first factor (b = b1, L = b1 at r = 1).
    {
        const double b1 = b[0];
        ReducedModel rm;
        rm.n = 2;
        rm.coords = {"r", "pr"};
        ParamMap pm{{"b", b1}, {"L", b1}};
        rm.dynamics = vfield({"pr", "-b^2*r + L^2/r^3"}, 2, pm, rm.coords);
        rm.equilibrium = vec({1.0, 0.0});  // r* = sqrt(L/b) = 1
        LyapunovCandidate cand;
        cand.M = sfield("(pr^2 + L^2/r^2 + b^2*r^2)/2 - L*b", 2, pm, rm.coords);
        cand.center = rm.equilibrium;
        rm.lyapunov = cand;
        e.reduced = rm;
    }
    return e;
}

// Realified complex Schwarz system: six polynomial/rational fields, a coframe
// dual to the commuting symmetry frame, and a differential-only momentum map.
CatalogEntry buildSchwarz() {
    CatalogEntry e;
    e.id = "schwarz";
    e.title = "realified Schwarz system with coframe forms";
    e.n = 6;
    e.k = 3;
    for (int i = 1; i <= 6; ++i) e.coords.push_back("v" + std::to_string(i));
    const auto& nm = e.coords;
    const std::string den = "(v3^2 + v4^2)";

    auto frame = std::make_shared<SchwarzFrame>();
    const std::vector<std::vector<std::string>> ycols_text = {
        {"(v1^2 - v2^2)/2", "v1*v2", "v1*v3 - v2*v4", "v2*v3 + v1*v4",
         "v3^2 - v4^2 + v1*v5 - v2*v6", "2*v3*v4 + v1*v6 + v2*v5"},
        {"1", "0", "0", "0", "0", "0"},
        {"0", "1", "0", "0", "0", "0"},
        {"-v1", "-v2", "-v3", "-v4", "-v5", "-v6"},
        {"v2", "-v1", "v4", "-v3", "v6", "-v5"},
        {"-v1*v2", "(v1^2 - v2^2)/2", "-(v2*v3 + v1*v4)", "v1*v3 - v2*v4",
         "-(2*v3*v4 + v2*v5 + v1*v6)", "v3^2 - v4^2 + v1*v5 - v2*v6"}};
    for (const auto& col : ycols_text) {
        std::vector<Expression> es;
        for (const auto& t : col) es.push_back(parse(t, 6, {}, nm));
        frame->ycols.push_back(std::move(es));
    }

    e.structure.n = 6;
    e.structure.k = 3;
    e.structure.forms = {std::make_shared<SchwarzCoframeForm>(frame, 0),
                         std::make_shared<SchwarzCoframeForm>(frame, 1),
                         std::make_shared<SchwarzCoframeForm>(frame, 3)};

    const std::vector<std::vector<std::string>> xfields = {
        {"v3", "v4", "v5", "v6", "1.5*(2*v4*v5*v6 + (v5^2 - v6^2)*v3)/" + den,
         "1.5*(2*v3*v5*v6 - v4*(v5^2 - v6^2))/" + den},
        {"0", "0", "0", "0", "v3", "v4"},
        {"0", "0", "0", "0", "-v4", "v3"},
        {"0", "0", "-v3", "-v4", "-2*v5", "-2*v6"},
        {"0", "0", "v4", "-v3", "2*v6", "-2*v5"},
        {"-v4", "v3", "-v6", "v5", "-1.5*(2*v3*v5*v6 - v4*(v5^2 - v6^2))/" + den,
         "1.5*(2*v4*v5*v6 + v3*(v5^2 - v6^2))/" + den}};
    std::vector<VectorFieldPtr> X;
    for (const auto& f : xfields) X.push_back(vfield(f, 6, {}, nm));
    e.dynamics = X[0];

    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {X[5]};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Differential;
    e.symmetry = S;
    e.level = LevelSpec{Vec(), vec({0.5, 0.3, 1.2, -0.4, 0.8, 0.6})};
    e.domain.constraints = {nonzero("v3^2 + v4^2", 6, {}, nm),
                            {std::make_shared<SchwarzFrameDet>(frame),
                             DomainPredicate::Kind::Nonzero}};
    e.sample_margin = 0.05;
    e.box_lo = vec({0.2, -0.8, 0.7, -0.8, 0.3, 0.2});
    e.box_hi = vec({1.2, 0.8, 1.5, 0.8, 1.2, 1.2});

    e.claims.push_back(claimStructure(10));
    e.claims.push_back({"frame-independent", [frame](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 20, rng);
        for (const Vec& x : pts) {
            double scale = 1.0;
            std::vector<double> xs(x.data(), x.data() + x.size());
            for (const auto& col : frame->ycols) {
                double norm2 = 0;
                for (const auto& c : col) {
                    const double v = eval_generic<double>(c, xs, {});
                    norm2 += v * v;
                }
                scale *= std::sqrt(norm2);
            }
            if (std::abs(frame->det(x)) <= 1e-6 * scale)
                return fail("frame-independent", "det too small");
        }
        return ok("frame-independent");
    }});
    e.claims.push_back({"fields-are-hamiltonian", [X](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        for (const auto& Xi : X) {
            const auto chk = is_hamiltonian_field(e.structure, *Xi, pts, 1e-6);
            if (!chk.all())
                return fail("fields-are-hamiltonian",
                            "defect " + num(*std::max_element(chk.defects.begin(),
                                                              chk.defects.end())));
        }
        return ok("fields-are-hamiltonian");
    }});
    e.claims.push_back({"dynamics-commutes-with-symmetry",
                        [X](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        for (const Vec& x : pts) {
            const Vec br = X[5]->jacobian(x) * X[0]->value(x) -
                           X[0]->jacobian(x) * X[5]->value(x);
            if (br.cwiseAbs().maxCoeff() > 1e-9)
                return fail("dynamics-commutes-with-symmetry", "bracket nonzero");
        }
        return ok("dynamics-commutes-with-symmetry");
    }});
    e.claims.push_back({"form-kernels-match-frame", [frame](const CatalogEntry& e,
                                                            std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 5, rng);
        // ker(d eta^1) = <Y2,Y3>, ker(d eta^2) = <Y1,Y6>, ker(d eta^4) = <Y4,Y5>.
        const std::vector<std::pair<int, int>> expect = {{1, 2}, {0, 5}, {3, 4}};
        for (const Vec& x : pts) {
            std::vector<double> xs(x.data(), x.data() + x.size());
            for (int a = 0; a < 3; ++a) {
                const SubspaceBasis ker =
                    kernel_of_rows(e.structure.form_value(a, x));
                Vec y1(6), y2(6);
                for (int j = 0; j < 6; ++j) {
                    y1(j) = eval_generic<double>(
                        frame->ycols[(std::size_t)expect[(std::size_t)a].first][(std::size_t)j], xs, {});
                    y2(j) = eval_generic<double>(
                        frame->ycols[(std::size_t)expect[(std::size_t)a].second][(std::size_t)j], xs, {});
                }
                if (ker.dim() != 2 || !contains(ker, y1) || !contains(ker, y2))
                    return fail("form-kernels-match-frame", "kernel mismatch at form " +
                                                                std::to_string(a + 1));
            }
        }
        return ok("form-kernels-match-frame");
    }});
    e.claims.push_back({"level-tangent-dim-3", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        for (const Vec& x : pts)
            if (level_tangent(e.structure, *e.symmetry, x).dim() != 3)
                return fail("level-tangent-dim-3", "dim != 3");
        return ok("level-tangent-dim-3");
    }});
    e.claims.push_back({"reduction-conditions", [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        for (const Vec& x : pts) {
            const auto A = check_condition_A(e.structure, *e.symmetry, x);
            const bool B = check_condition_B(e.structure, *e.symmetry, x);
            for (bool a : A)
                if (!a) return fail("reduction-conditions", "condition A fails");
            if (!B) return fail("reduction-conditions", "condition B fails");
        }
        return ok("reduction-conditions");
    }});
    e.claims.push_back(claimLemmaIdentities(10));
    return e;
}

// Affine Lie system on R^5 with a two-polysymplectic structure; dynamics taken
// with constant coefficients c1..c6.
CatalogEntry buildAffine(const ParamMap& overrides) {
    CatalogEntry e;
    e.id = "affine-lie";
    e.title = "affine system on R^5";
    e.n = 5;
    e.k = 2;
    for (int i = 1; i <= 5; ++i) e.coords.push_back("x" + std::to_string(i));
    ParamMap c{{"c1", 0}, {"c2", 0}, {"c3", 0}, {"c4", 1}, {"c5", 0}, {"c6", 1}};
    for (auto& [key, v] : c)
        if (auto it = overrides.find(key); it != overrides.end()) v = it->second;
    e.params = c;
    e.structure.n = 5;
    e.structure.k = 2;
    e.structure.forms = {constForm(5, {{3, 5, 1}, {4, 1, 1}}),
                         constForm(5, {{3, 5, 1}, {4, 2, 1}})};
    KFunction h;
    h.n = 5;
    h.k = 2;
    h.components = {
        sfield("-c1*x4 + c3*x5 + c4*x1 - c5*x3 + c6*(x3^2 + x5^2)/2", 5, c),
        sfield("-c2*x4 + c3*x5 + c4*x2 - c5*x3 + c6*(x3^2 + x5^2)/2", 5, c)};
    e.hamiltonian = h;
    e.dynamics = vfield({"c1", "c2", "c3 + c6*x5", "c4", "c5 - c6*x3"}, 5, c);
    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {vfield({"0", "0", "0", "1", "0"}, 5)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("x1", 5), sfield("x2", 5)};
    e.symmetry = S;
    e.level = LevelSpec{vec({0.5, -0.3}), vec({0.5, -0.3, 0.2, 0.1, -0.4})};
    e.box_lo = -1.5 * Vec::Ones(5);
    e.box_hi = 1.5 * Vec::Ones(5);
    e.equilibrium_seeds = {vec({0.5, -0.3, 0.1, 0.1, -0.1})};

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back(claimConditions({true, true}, true, true));
    e.claims.push_back(claimReducedDims(2, {2, 2}, 0));
    e.claims.push_back(claimLemmaIdentities());
    e.claims.push_back({"relative-equilibria-xi-1", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty() || !eqs.front().accepted)
            return fail("relative-equilibria-xi-1", "no accepted equilibrium");
        const auto& q = eqs.front();
        if (std::abs(q.xi(0) - 1.0) > 1e-9)
            return fail("relative-equilibria-xi-1", "xi = " + num(q.xi(0)));
        if (std::abs(q.z(2)) > 1e-9 || std::abs(q.z(4)) > 1e-9)
            return fail("relative-equilibria-xi-1", "x3/x5 not zero");
        return ok("relative-equilibria-xi-1");
    }});
    e.claims.push_back({"formal-stability", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("formal-stability", "no equilibrium");
        const auto rep =
            classify_formal_stability(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        return rep.classification == StabilityClass::FormallyStable
                   ? ok("formal-stability")
                   : fail("formal-stability", to_string(rep.classification));
    }});
    e.claims.push_back({"dynamics-reduction-iff-c1-c2-zero",
                        [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_sample_points(e, 10, rng);
        const auto chk = dynamics_reduction_check(e.structure, *e.symmetry, *e.hamiltonian, pts);
        const bool expect =
            e.params.at("c1") == 0.0 && e.params.at("c2") == 0.0;
        if (chk.pass != expect)
            return fail("dynamics-reduction-iff-c1-c2-zero",
                        "pass=" + std::to_string(chk.pass));
        return ok("dynamics-reduction-iff-c1-c2-zero");
    }});
    e.claims.push_back({"lyapunov-reduced", [](const CatalogEntry& e, std::mt19937_64& rng) {
        if (!e.reduced || !e.reduced->lyapunov) return fail("lyapunov-reduced", "no model");
        const auto res = lyapunov_test(*e.reduced->dynamics, *e.reduced->lyapunov, 0.5, 200, rng);
        return res.pass ? ok("lyapunov-reduced")
                        : fail("lyapunov-reduced", "max derivative " + num(res.max_derivative));
    }});

    {
        ReducedModel rm;
        rm.n = 2;
        rm.coords = {"x3", "x5"};
        rm.dynamics = vfield({"c3 + c6*x5", "c5 - c6*x3"}, 2, c, rm.coords);
        rm.equilibrium = vec({0.0, 0.0});
        LyapunovCandidate cand;
        cand.M = sfield("x3^2 + x5^2", 2, {}, rm.coords);
        cand.center = rm.equilibrium;
        rm.lyapunov = cand;
        e.reduced = rm;
    }
    return e;
}

// Quantum quadratic system on R^6: the equilibrium family v4 = 0 is recovered
// but the summed reduced Hessian is only semidefinite.
CatalogEntry buildQuantum() {
    CatalogEntry e;
    e.id = "quantum-quadratic";
    e.title = "quadratic quantum system on R^6";
    e.n = 6;
    e.k = 2;
    for (int i = 1; i <= 6; ++i) e.coords.push_back("v" + std::to_string(i));
    e.structure.n = 6;
    e.structure.k = 2;
    e.structure.forms = {constForm(6, {{1, 3, 1}, {2, 4, 1}, {5, 1, 1}, {4, 6, 1}}),
                         constForm(6, {{4, 6, 1}, {3, 5, -1}})};
    KFunction h;
    h.n = 6;
    h.k = 2;
    h.components = {sfield("v1 + v4^2/2", 6, {}, e.coords),
                    sfield("v3 + v4^2/2", 6, {}, e.coords)};
    e.hamiltonian = h;
    e.dynamics = vfield({"0", "0", "0", "0", "1", "-v4"}, 6, {}, e.coords);
    SymmetryModel S;
    S.g_dim = 1;
    S.generators = {vfield({"0", "0", "0", "0", "1", "0"}, 6)};
    S.structure_constants = std::vector<Mat>{Mat::Zero(1, 1)};
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("v1", 6, {}, e.coords), sfield("v3", 6, {}, e.coords)};
    e.symmetry = S;
    e.level = LevelSpec{vec({0.4, 0.8}), vec({0.4, -0.2, 0.8, 0.3, 0.1, -0.5})};
    e.box_lo = -1.5 * Vec::Ones(6);
    e.box_hi = 1.5 * Vec::Ones(6);
    e.equilibrium_seeds = {vec({0.4, -0.2, 0.8, 0.05, 0.1, -0.5})};

    e.claims.push_back(claimStructure());
    e.claims.push_back({"kernels-as-expected", [](const CatalogEntry& e, std::mt19937_64&) {
        const Vec x = e.level->seed;
        const SubspaceBasis k1 = kernel_of_rows(e.structure.form_value(0, x));
        const SubspaceBasis k2 = kernel_of_rows(e.structure.form_value(1, x));
        Vec a = Vec::Zero(6), b = Vec::Zero(6);
        a(2) = 1;
        a(4) = 1;  // e3 + e5
        b(1) = 1;
        b(5) = 1;  // e2 + e6
        if (k1.dim() != 2 || !contains(k1, a) || !contains(k1, b))
            return fail("kernels-as-expected", "ker omega^1 mismatch");
        Vec c = Vec::Zero(6), d = Vec::Zero(6);
        c(0) = 1;
        d(1) = 1;
        if (k2.dim() != 2 || !contains(k2, c) || !contains(k2, d))
            return fail("kernels-as-expected", "ker omega^2 mismatch");
        return ok("kernels-as-expected");
    }});
    e.claims.push_back(claimMomentum());
    e.claims.push_back(claimLemmaIdentities());
    e.claims.push_back({"equilibrium-family-v4-0", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty() || !eqs.front().accepted)
            return fail("equilibrium-family-v4-0", "no accepted equilibrium");
        const auto& q = eqs.front();
        if (std::abs(q.z(3)) > 1e-9) return fail("equilibrium-family-v4-0", "v4 != 0");
        if (std::abs(q.xi(0) - 1.0) > 1e-9) return fail("equilibrium-family-v4-0", "xi != 1");
        return ok("equilibrium-family-v4-0");
    }});
    e.claims.push_back({"not-formally-stable", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("not-formally-stable", "no equilibrium");
        const auto rep =
            classify_formal_stability(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        if (rep.classification == StabilityClass::FormallyStable ||
            rep.classification == StabilityClass::FormallyStableNegative)
            return fail("not-formally-stable", to_string(rep.classification));
        return ok("not-formally-stable", to_string(rep.classification));
    }});
    e.claims.push_back({"reduced-minimum-semidefinite", [](const CatalogEntry& e,
                                                          std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("reduced-minimum-semidefinite", "no equilibrium");
        const Definiteness d =
            reduced_minimum_check(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        return d == Definiteness::PositiveSemidefinite
                   ? ok("reduced-minimum-semidefinite")
                   : fail("reduced-minimum-semidefinite", to_string(d));
    }});

    {
        ReducedModel rm;
        rm.n = 3;
        rm.coords = {"v2", "v4", "v6"};
        rm.dynamics = vfield({"0", "0", "-v4"}, 3, {}, rm.coords);
        rm.equilibrium = vec({0.0, 0.0, 0.0});
        e.reduced = rm;
    }
    return e;
}

// Polynomial vector field on R^8; formal stability holds exactly for unit
// exponents.
CatalogEntry buildPolynomial(const ParamMap& overrides) {
    ParamMap p{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}};
    for (auto& [key, v] : p)
        if (auto it = overrides.find(key); it != overrides.end()) v = it->second;
    for (const auto& [key, v] : p)
        if (v < 1 || v != std::floor(v)) throw InputError("polynomial: exponents must be integers >= 1");
    const int a = (int)p.at("a"), b = (int)p.at("b"), c = (int)p.at("c"), d = (int)p.at("d"),
              ee = (int)p.at("e");
    auto mono = [](const std::string& var, int exp) {
        return exp == 1 ? var : var + "^" + std::to_string(exp);
    };
    auto antider = [&](const std::string& var, int exp) {
        return mono(var, exp + 1) + "/" + std::to_string(exp + 1);
    };
    CatalogEntry e;
    e.id = "polynomial";
    e.title = "polynomial system on R^8";
    e.n = 8;
    e.k = 2;
    e.params = p;
    for (int i = 1; i <= 8; ++i) e.coords.push_back("x" + std::to_string(i));
    e.structure.n = 8;
    e.structure.k = 2;
    e.structure.forms = {constForm(8, {{3, 4, 1}, {1, 5, 1}}),
                         constForm(8, {{2, 6, 1}, {7, 8, 1}})};
    KFunction h;
    h.n = 8;
    h.k = 2;
    h.components = {sfield(antider("x4", b) + " + " + antider("x3", c), 8),
                    sfield(antider("x6", a) + " + " + antider("x8", d) + " + " +
                               antider("x7", ee),
                           8)};
    e.hamiltonian = h;
    e.dynamics = vfield({"0", mono("x6", a), mono("x4", b), "-" + mono("x3", c), "0", "0",
                         mono("x8", d), "-" + mono("x7", ee)},
                        8);
    SymmetryModel S;
    S.g_dim = 3;
    S.generators = {vfield({"0", "1", "0", "0", "0", "0", "0", "0"}, 8),
                    vfield({"1", "0", "0", "0", "0", "0", "0", "0"}, 8),
                    vfield({"0", "0", "0", "0", "1", "0", "0", "0"}, 8)};
    S.structure_constants = std::vector<Mat>(3, Mat::Zero(3, 3));
    S.momentum.mode = Momentum::Mode::Explicit;
    S.momentum.J = {sfield("0", 8), sfield("x5", 8), sfield("-x1", 8),
                    sfield("x6", 8), sfield("0", 8), sfield("0", 8)};
    e.symmetry = S;
    e.level =
        LevelSpec{vec({0, 0.8, -0.5, 1.1, 0, 0}), vec({0.5, -0.3, 0.2, -0.1, 0.8, 1.1, 0.15, -0.25})};
    e.box_lo = -1.2 * Vec::Ones(8);
    e.box_hi = 1.2 * Vec::Ones(8);
    e.equilibrium_seeds = {vec({0.5, -0.3, 0.05, -0.04, 0.8, 1.1, 0.03, -0.06})};

    e.claims.push_back(claimStructure());
    e.claims.push_back(claimMomentum());
    e.claims.push_back({"weakly-regular-not-submersion",
                        [](const CatalogEntry& e, std::mt19937_64& rng) {
        auto pts = catalog_level_points(e, 10, rng);
        const auto rep = weak_regularity_probe(e.structure, *e.symmetry, pts);
        if (!rep.constant_rank || rep.rank != 3 || rep.submersion_at_samples)
            return fail("weakly-regular-not-submersion", "rank=" + std::to_string(rep.rank));
        return ok("weakly-regular-not-submersion", "rank 3, level dim 5");
    }});
    e.claims.push_back(claimConditions({true, true}, true, true));
    e.claims.push_back(claimReducedDims(4, {2, 2}, 0));
    e.claims.push_back(claimLemmaIdentities());
    e.claims.push_back({"relative-equilibria", [](const CatalogEntry& e, std::mt19937_64&) {
        const int a = (int)e.params.at("a");
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty() || !eqs.front().accepted)
            return fail("relative-equilibria", "no accepted equilibrium");
        const auto& q = eqs.front();
        for (int idx : {2, 3, 6, 7})
            if (std::abs(q.z(idx)) > 1e-8)
                return fail("relative-equilibria", "x" + std::to_string(idx + 1) + " != 0");
        const double x6a = std::pow(q.z(5), a);
        if (std::abs(q.xi(0) - x6a) > 1e-8 || std::abs(q.xi(1)) > 1e-9 ||
            std::abs(q.xi(2)) > 1e-9)
            return fail("relative-equilibria", "xi mismatch");
        return ok("relative-equilibria");
    }});
    e.claims.push_back({"stability-iff-unit-exponents", [](const CatalogEntry& e,
                                                           std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("stability-iff-unit-exponents", "no equilibrium");
        const auto rep =
            classify_formal_stability(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        const bool unit = e.params.at("b") == 1 && e.params.at("c") == 1 &&
                          e.params.at("d") == 1 && e.params.at("e") == 1;
        if (unit) {
            if (rep.classification != StabilityClass::FormallyStable)
                return fail("stability-iff-unit-exponents", to_string(rep.classification));
        } else {
            if (rep.classification == StabilityClass::FormallyStable ||
                rep.classification == StabilityClass::FormallyStableNegative)
                return fail("stability-iff-unit-exponents", to_string(rep.classification));
        }
        return ok("stability-iff-unit-exponents", to_string(rep.classification));
    }});
    e.claims.push_back({"gauge-degeneracy", [](const CatalogEntry& e, std::mt19937_64&) {
        auto eqs = find_relative_equilibria(e.structure, *e.symmetry, *e.hamiltonian,
                                            e.equilibrium_seeds);
        if (eqs.empty()) return fail("gauge-degeneracy", "no equilibrium");
        const double d =
            gauge_degeneracy_check(e.structure, *e.symmetry, *e.hamiltonian, eqs.front());
        return d < 1e-7 ? ok("gauge-degeneracy") : fail("gauge-degeneracy", "defect " + num(d));
    }});

    {
        ReducedModel rm;
        rm.n = 4;
        rm.coords = {"x3", "x4", "x7", "x8"};
        rm.dynamics = vfield({mono("x4", b), "-" + mono("x3", c), mono("x8", d),
                              "-" + mono("x7", ee)},
                             4, {}, rm.coords);
        rm.equilibrium = Vec::Zero(4);
        LyapunovCandidate cand;
        cand.M = sfield(antider("x4", b) + " + " + antider("x3", c) + " + " + antider("x8", d) +
                            " + " + antider("x7", ee),
                        4, {}, rm.coords);
        cand.center = rm.equilibrium;
        rm.lyapunov = cand;
        e.reduced = rm;
    }
    return e;
}

}  // namespace

std::vector<std::string> catalog_ids() {
    return {"example-2-3-r3", "counterexample-r4", "example-r6",     "example-r7",
            "integrable",     "product-symplectic", "oscillators",    "schwarz",
            "affine-lie",     "quantum-quadratic",  "polynomial"};
}

CatalogEntry catalog_load(const std::string& id, const ParamMap& overrides) {
    if (id == "example-2-3-r3") return buildExample23();
    if (id == "counterexample-r4") return buildR4();
    if (id == "example-r6") return buildR6();
    if (id == "example-r7") return buildR7();
    if (id == "integrable") return buildIntegrable(overrides);
    if (id == "product-symplectic") return buildProductSymplectic();
    if (id == "oscillators") return buildOscillators(overrides);
    if (id == "schwarz") return buildSchwarz();
    if (id == "affine-lie") return buildAffine(overrides);
    if (id == "quantum-quadratic") return buildQuantum();
    if (id == "polynomial") return buildPolynomial(overrides);
    throw InputError("unknown catalog id '" + id + "'");
}

std::vector<ClaimResult> run_claims(const CatalogEntry& entry, std::uint64_t seed) {
    std::vector<ClaimResult> out;
    std::mt19937_64 rng(seed);
    for (const auto& claim : entry.claims) {
        try {
            out.push_back(claim.run(entry, rng));
        } catch (const std::exception& ex) {
            out.push_back(fail(claim.name, std::string("exception: ") + ex.what()));
        }
    }
    return out;
}

std::vector<Vec> catalog_sample_points(const CatalogEntry& e, int count, std::mt19937_64& rng) {
    return sample_box(e.box_lo, e.box_hi, count, rng, e.domain, e.sample_margin);
}

std::vector<Vec> catalog_level_points(const CatalogEntry& e, int count, std::mt19937_64& rng) {
    if (!e.level || !e.symmetry) throw InputError("catalog entry has no designated level");
    LevelSamplerConfig scfg;
    scfg.domain_margin = e.sample_margin;
    return sample_level_points(e.structure, *e.symmetry, *e.level, count, rng, e.domain, scfg);
}

}  // namespace psmech
