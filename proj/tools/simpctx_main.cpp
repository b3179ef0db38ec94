// Command-line front end: scenario file in, JSON report out.
// Exit codes: 0 noncontextual/feasible/valid, 1 contextual/infeasible,
// 2 usage or malformed input, 3 resource cap exceeded.
#include <CLI11.hpp>
#include <iostream>

#include "simpctx/builtins.h"
#include "simpctx/json_io.h"

using namespace simpctx;

namespace {

constexpr int kOk = 0;
constexpr int kContextual = 1;
constexpr int kUsage = 2;
constexpr int kResource = 3;

long capFromEnv() {
    const char* env = std::getenv("SIMPCTX_MAX_VERTICES");
    if (!env) return kDefaultEnumerationCap;
    try {
        return std::stol(env);
    } catch (...) {
        return kDefaultEnumerationCap;
    }
}

void emit(const Json& report) { std::cout << canonicalDump(report); }

OutcomeSpace outcomeOf(const Scenario& sc) {
    return sc.outcome ? *sc.outcome : OutcomeSpace::nerve(2);
}

Json functionalToJson(const SeparatingFunctional& f, const PresentedSSet& X) {
    Json out = Json::object();
    Json cells = Json::array();
    for (std::size_t k = 0; k < f.cells.size(); ++k) {
        if (f.coeff[k] == 0) continue;
        Json cell = Json::object();
        cell["simplex"] = X.label(f.cells[k].first);
        cell["outcome"] = formatOutcome(f.cells[k].second);
        cell["coefficient"] = formatRational(f.coeff[k]);
        cells.push_back(cell);
    }
    out["cells"] = cells;
    out["bound"] = formatRational(f.bound);
    return out;
}

Json mixtureToJson(const ClassicalDistribution<Rational>& d) {
    Json out = Json::array();
    for (const auto& [r, w] : d.weights) {
        Json entry = Json::object();
        entry["assignment"] = assignmentToJson(r);
        entry["weight"] = formatRational(w);
        out.push_back(entry);
    }
    return out;
}

int cmdValidate(const std::string& path) {
    Scenario sc = loadScenario(path);
    Json report = Json::object();
    report["command"] = "validate";
    Json violations = Json::array();
    for (const auto& v : sc.space->validate()) {
        Json item = Json::object();
        item["simplex"] = sc.space->label(v.simplex);
        item["i"] = v.i;
        item["j"] = v.j;
        violations.push_back(item);
    }
    report["identity_violations"] = violations;
    bool ok = violations.empty();
    if (!sc.distribution_cells.empty()) {
        try {
            sc.buildDistribution();
            report["distribution"] = "valid";
        } catch (const std::exception& e) {
            report["distribution"] = e.what();
            ok = false;
        }
    }
    if (!sc.observables.empty()) {
        auto A = sc.buildObservables();
        Json obs = Json::array();
        for (const auto& v : A.check()) {
            Json item = Json::object();
            item["simplex"] = sc.space->label(v.simplex);
            item["message"] = v.message;
            obs.push_back(item);
        }
        report["observable_violations"] = obs;
        ok = ok && obs.empty();
    }
    report["valid"] = ok;
    emit(report);
    return ok ? kOk : kContextual;
}

int cmdDeterministics(const std::string& path, long cap) {
    Scenario sc = loadScenario(path);
    OutcomeSpace Y = outcomeOf(sc);
    std::vector<DeterministicAssignment> sols =
        Y.kind() == OutcomeSpace::Kind::Nerve ? enumerateDeterministic(sc.space, Y, {}, cap)
                                              : enumerateDeterministicGeneral(sc.space, Y, cap);
    Json report = Json::object();
    report["command"] = "deterministics";
    report["count"] = sols.size();
    Json list = Json::array();
    for (const auto& r : sols) list.push_back(assignmentToJson(r));
    report["assignments"] = list;
    emit(report);
    return kOk;
}

int cmdCheck(const std::string& path, bool strong, bool logical, long cap) {
    Scenario sc = loadScenario(path);
    auto p = sc.buildDistribution();
    Json report = Json::object();
    report["command"] = "check";
    bool contextual = false;
    if (strong) {
        auto r = isStronglyContextual(p, cap);
        contextual = r.strongly_contextual;
        report["mode"] = "strong";
        report["strongly_contextual"] = r.strongly_contextual;
        Json sup = Json::array();
        for (const auto& s : r.support) sup.push_back(assignmentToJson(s));
        report["support"] = sup;
    } else if (logical) {
        contextual = isLogicallyContextual(p, cap);
        report["mode"] = "logical";
        report["logically_contextual"] = contextual;
    } else {
        auto verdict = isNoncontextual(p, cap);
        contextual = verdict.contextual;
        report["mode"] = "noncontextual";
        report["contextual"] = verdict.contextual;
        if (verdict.mixture) report["mixture"] = mixtureToJson(*verdict.mixture);
        if (verdict.functional)
            report["separating_functional"] = functionalToJson(*verdict.functional, *sc.space);
    }
    emit(report);
    return contextual ? kContextual : kOk;
}

int cmdChsh(const std::string& path) {
    Scenario sc = loadScenario(path);
    auto p = sc.buildDistribution();
    auto r = chshCheck(p);
    Json report = Json::object();
    report["command"] = "chsh";
    Json sums = Json::array();
    for (const auto& s : r.sums) sums.push_back(formatRational(s));
    report["sums"] = sums;
    report["max_value"] = formatRational(r.max_value);
    report["satisfied"] = r.all_satisfied;
    emit(report);
    return r.all_satisfied ? kOk : kContextual;
}

int cmdExtend(const std::string& path, const std::string& into) {
    Scenario sc = loadScenario(path);
    auto p = sc.buildDistribution();
    SSetPtr target = builtinSpace(into);
    SpaceMap inc = inclusionByLabels(sc.space, target);
    auto result = solveExtension(p, inc);
    Json report = Json::object();
    report["command"] = "extend";
    report["into"] = into;
    report["feasible"] = result.feasible;
    if (result.feasible) {
        Json cells = Json::object();
        const PresentedSSet& W = *target;
        for (int dim = 1; dim <= W.maxDim(); ++dim)
            for (int id = 0; id < W.count(dim); ++id)
                cells[W.label({dim, id})] = distributionToJson(result.extension->at({dim, id}));
        report["extension"] = cells;
    } else {
        Json rows = Json::array();
        for (int k = 0; k < result.farkas.size(); ++k) {
            if (result.farkas(k) == 0) continue;
            Json row = Json::object();
            row["equation"] = result.row_labels[k];
            row["coefficient"] = formatRational(result.farkas(k));
            rows.push_back(row);
        }
        report["certificate"] = rows;
    }
    emit(report);
    return result.feasible ? kOk : kContextual;
}

int cmdGlue(const std::string& path, long cap) {
    Scenario sc = loadScenario(path);
    if (sc.classical.size() != 2)
        throw JsonError("glue needs two classical blocks (subspaces A and B)");
    OutcomeSpace Y = outcomeOf(sc);
    auto build = [&](const ClassicalInput& ci) {
        Subspace Z = sc.space->namedSubspace(ci.subspace);
        SubspaceResult sub = materialize(sc.space, Z);
        ClassicalDistribution<Rational> d{sub.space, Y, {}};
        for (const auto& [edges, weight] : ci.weights) {
            std::vector<int> labeling(sub.space->count(1), 0);
            for (const auto& [label, v] : edges) labeling[sub.space->byLabel(label).id] = v;
            d.add(assignmentFromEdges(sub.space, Y, labeling), weight);
        }
        if (!d.isNormalized())
            throw JsonError("classical weights on " + ci.subspace + " do not normalize");
        return std::make_pair(d, sub);
    };
    auto [dA, subA] = build(sc.classical[0]);
    auto [dB, subB] = build(sc.classical[1]);
    Json report = Json::object();
    report["command"] = "glue";
    try {
        auto glued = glueClassical(dA, subA.inclusion, dB, subB.inclusion, cap);
        report["compatible"] = true;
        report["glued"] = mixtureToJson(glued);
        emit(report);
        return kOk;
    } catch (const std::invalid_argument& e) {
        report["compatible"] = false;
        report["reason"] = e.what();
        emit(report);
        return kContextual;
    }
}

int cmdWitness(const std::string& path, const std::string& subspace, long cap) {
    Scenario sc = loadScenario(path);
    auto p = sc.buildDistribution();
    auto witness = clWitness(p, sc.space->namedSubspace(subspace), cap);
    Json report = Json::object();
    report["command"] = "witness";
    report["subspace"] = subspace;
    switch (witness.verdict) {
        case WitnessResult::Verdict::StronglyContextualByWitness:
            report["verdict"] = "strongly_contextual";
            break;
        case WitnessResult::Verdict::Inconclusive:
            report["verdict"] = "inconclusive";
            break;
        case WitnessResult::Verdict::Vacuous:
            report["verdict"] = "vacuous";
            break;
    }
    if (witness.quotient_space) {
        std::size_t hash =
            std::hash<std::string>{}(canonicalDump(presentationToJson(*witness.quotient_space)));
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016zx", hash);
        report["quotient_space_hash"] = hex;
    }
    Json classes = Json::array();
    for (const auto& cls : witness.classes) {
        Json c = Json::object();
        Json values = Json::object();
        for (int id = 0; id < cls.rep.space->count(2); ++id)
            if (cls.rep.values[id] != 0) values[cls.rep.space->label({2, id})] = cls.rep.values[id];
        c["cochain"] = values;
        auto zero = isZeroClass(cls);
        c["zero"] = zero.is_zero;
        if (zero.is_zero && zero.preimage) {
            Json pre = Json::object();
            for (int id = 0; id < cls.rep.space->count(1); ++id)
                if (zero.preimage->values[id] != 0)
                    pre[cls.rep.space->label({1, id})] = zero.preimage->values[id];
            c["coboundary_preimage"] = pre;
        }
        classes.push_back(c);
    }
    report["classes"] = classes;
    emit(report);
    return witness.verdict == WitnessResult::Verdict::StronglyContextualByWitness ? kContextual
                                                                                  : kOk;
}

int cmdH1(const std::string& path, int d) {
    Scenario sc = loadScenario(path);
    auto result = h1(sc.space, d);
    Json report = Json::object();
    report["command"] = "h1";
    report["d"] = d;
    Json invs = Json::array();
    for (const Integer& inv : result.invariants) invs.push_back(inv.get_str());
    report["invariants"] = invs;
    Json basis = Json::array();
    for (const Cochain& rep : result.basis) {
        Json values = Json::object();
        for (int id = 0; id < sc.space->count(1); ++id)
            if (rep.values[id] != 0) values[sc.space->label({1, id})] = rep.values[id];
        basis.push_back(values);
    }
    report["basis_cocycles"] = basis;
    emit(report);
    return kOk;
}

int cmdBorn(const std::string& path, const std::string& state) {
    Scenario sc = loadScenario(path);
    if (!state.empty()) sc.state = state;
    auto A = sc.buildObservables();
    auto rho = sc.buildState();
    auto p = born(A, rho);
    Scenario out = sc;
    out.outcome = OutcomeSpace::nerve(2);
    out.distribution_cells.clear();
    const PresentedSSet& X = *sc.space;
    for (int dim = 1; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            out.distribution_cells[X.label({dim, id})] = p.at({dim, id});
    emit(serializeScenario(out));
    return kOk;
}

int cmdFacets(const std::string& path, long cap) {
    Scenario sc = loadScenario(path);
    OutcomeSpace Y = outcomeOf(sc);
    Subspace boundary = sc.space->namedSubspace("boundary");
    std::vector<CellCoordinate> coords;
    for (const SimplexId& s : boundary.all()) {
        if (s.dim != 1) continue;
        coords.push_back({s, Outcome{0}, sc.space->label(s) + "^0"});
    }
    if (coords.empty()) throw JsonError("facets: the boundary subspace carries no edges");
    auto hull = classicalFacets(sc.space, Y, coords, cap);
    Json report = Json::object();
    report["command"] = "facets";
    Json names = Json::array();
    for (const auto& c : coords) names.push_back(c.name);
    report["coordinates"] = names;
    report["dimension"] = hull.dimension;
    Json rows = Json::array();
    for (const Facet& f : hull.facets) {
        Json row = Json::object();
        Json coeffs = Json::array();
        for (int k = 0; k < f.a.size(); ++k) coeffs.push_back(formatRational(f.a(k)));
        row["coefficients"] = coeffs;
        row["bound"] = formatRational(f.b);
        rows.push_back(row);
    }
    report["facets"] = rows;
    emit(report);
    return kOk;
}

int cmdDiscreteEmbed(const std::string& path) {
    Scenario sc = loadScenario(path);
    if (!sc.discrete) throw JsonError("discrete-embed needs a 'discrete' block");
    auto emb = discreteEmbed(*sc.discrete);
    Scenario out;
    out.space = emb.space;
    out.space_spec = Json::object();
    out.outcome = emb.outcomes;
    auto it = sc.discrete_tables.find("tables");
    if (it != sc.discrete_tables.end()) {
        auto p = tableToDistribution(emb, it->second);
        const PresentedSSet& X = *emb.space;
        for (int dim = 1; dim <= X.maxDim(); ++dim)
            for (int id = 0; id < X.count(dim); ++id)
                out.distribution_cells[X.label({dim, id})] = p.at({dim, id});
    }
    emit(serializeScenario(out));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simpctx: exact decision procedures for simplicial distributions"};
    app.require_subcommand(1);
    long cap = capFromEnv();

    std::string file, into, subspace_name, state;
    bool strong = false, logical = false;
    int dmod = 2;

    auto* validate = app.add_subcommand("validate", "check the simplicial identities and tables");
    validate->add_option("file", file)->required();

    auto* deterministics = app.add_subcommand("deterministics", "list all outcome assignments");
    deterministics->add_option("file", file)->required();
    deterministics->add_option("--cap", cap, "enumeration cap");

    auto* check = app.add_subcommand("check", "decide (non)contextuality");
    check->add_option("file", file)->required();
    check->add_flag("--strong", strong, "decide strong contextuality");
    check->add_flag("--logical", logical, "decide logical contextuality");

    auto* chsh = app.add_subcommand("chsh", "evaluate the four CHSH inequalities");
    chsh->add_option("file", file)->required();

    auto* extend = app.add_subcommand("extend", "solve the extension problem");
    extend->add_option("file", file)->required();
    extend->add_option("--into", into, "target builtin space")->required();

    auto* glue_cmd = app.add_subcommand("glue", "glue two classical distributions");
    glue_cmd->add_option("file", file)->required();

    auto* witness = app.add_subcommand("witness", "cohomological strong-contextuality witness");
    witness->add_option("file", file)->required();
    witness->add_option("--subspace", subspace_name, "named subspace")->required();

    auto* h1_cmd = app.add_subcommand("h1", "first cohomology of the measurement space");
    h1_cmd->add_option("file", file)->required();
    h1_cmd->add_option("--d", dmod, "coefficient modulus");

    auto* born_cmd = app.add_subcommand("born", "Born-rule distribution of the observables");
    born_cmd->add_option("file", file)->required();
    born_cmd->add_option("--state", state, "state fixture name");

    auto* facets = app.add_subcommand("facets", "facets of the classical polytope");
    facets->add_option("file", file)->required();

    auto* embed = app.add_subcommand("discrete-embed", "embed a discrete scenario");
    embed->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmdValidate(file);
        if (*deterministics) return cmdDeterministics(file, cap);
        if (*check) return cmdCheck(file, strong, logical, cap);
        if (*chsh) return cmdChsh(file);
        if (*extend) return cmdExtend(file, into);
        if (*glue_cmd) return cmdGlue(file, cap);
        if (*witness) return cmdWitness(file, subspace_name, cap);
        if (*h1_cmd) return cmdH1(file, dmod);
        if (*born_cmd) return cmdBorn(file, state);
        if (*facets) return cmdFacets(file, cap);
        if (*embed) return cmdDiscreteEmbed(file);
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const std::length_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
