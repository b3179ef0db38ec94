#include "simpctx/json_io.h"

#include <fstream>

#include "simpctx/builtins.h"

namespace simpctx {

namespace {

Rational ratFromJson(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long>()));
    if (j.is_string()) {
        auto q = parseRational(j.get<std::string>());
        if (!q) throw JsonError("malformed rational '" + j.get<std::string>() + "'");
        return *q;
    }
    throw JsonError("rationals must be integers or 'a/b' strings");
}

Json ratToJson(const Rational& q) { return Json(formatRational(q)); }


}  // namespace

Json distributionToJson(const Distribution<Rational>& p) {
    Json out = Json::object();
    for (const auto& [theta, value] : p.support()) out[formatOutcome(theta)] = ratToJson(value);
    return out;
}

Distribution<Rational> distributionFromJson(const Json& j) {
    if (!j.is_object()) throw JsonError("distribution must be an object");
    Distribution<Rational> p;
    for (const auto& [key, value] : j.items()) p.add(parseOutcome(key), ratFromJson(value));
    return p;
}

Json assignmentToJson(const DeterministicAssignment& r) {
    Json out = Json::object();
    const PresentedSSet& X = r.map.space();
    if (!r.edges.empty()) {
        for (int id = 0; id < X.count(1); ++id) {
            std::string label = X.label({1, id});
            if (label.empty()) label = "edge" + std::to_string(id);
            out[label] = r.edges[id];
        }
        return out;
    }
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            std::string label = X.label({dim, id});
            if (label.empty()) label = "s" + std::to_string(dim) + "." + std::to_string(id);
            out[label] = formatOutcome(r.map.at({dim, id}));
        }
    return out;
}

Json presentationToJson(const PresentedSSet& X) {
    Json out = Json::object();
    out["max_dim"] = X.maxDim();
    Json simplices = Json::array();
    for (int dim = 0; dim <= X.maxDim(); ++dim) {
        Json row = Json::array();
        for (int id = 0; id < X.count(dim); ++id) row.push_back(X.label({dim, id}));
        simplices.push_back(row);
    }
    out["simplices"] = simplices;
    Json faces = Json::array();
    for (int dim = 1; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            Json entry = Json::object();
            entry["simplex"] = X.label({dim, id});
            Json list = Json::array();
            for (int i = 0; i <= dim; ++i) {
                SimplexRef t = X.tableFace({dim, id}, i);
                if (!t.isDegenerate()) {
                    list.push_back(X.label(t.base));
                } else {
                    Json ref = Json::object();
                    ref["degeneracies"] = t.degeneracies;
                    ref["base"] = X.label(t.base);
                    list.push_back(ref);
                }
            }
            entry["faces"] = list;
            faces.push_back(entry);
        }
    out["faces"] = faces;
    if (!X.namedSubspaces().empty()) {
        Json subs = Json::object();
        for (const auto& [name, gens] : X.namedSubspaces()) {
            Json list = Json::array();
            for (SimplexId g : gens) list.push_back(X.label(g));
            subs[name] = list;
        }
        out["subspaces"] = subs;
    }
    return out;
}

SSetPtr presentationFromJson(const Json& j) {
    int max_dim = j.at("max_dim").get<int>();
    PresentedSSet::Builder b(max_dim);
    std::map<std::string, SimplexId> index;
    const Json& simplices = j.at("simplices");
    for (int dim = 0; dim < static_cast<int>(simplices.size()); ++dim)
        for (const auto& label : simplices[dim]) {
            SimplexId s = b.add(dim, label.get<std::string>());
            if (!label.get<std::string>().empty()) index[label.get<std::string>()] = s;
        }
    auto lookup = [&](const std::string& label) {
        auto it = index.find(label);
        if (it == index.end()) throw JsonError("no simplex labeled '" + label + "'");
        return it->second;
    };
    auto parseRef = [&](const Json& ref) -> SimplexRef {
        if (ref.is_string()) return SimplexRef(lookup(ref.get<std::string>()));
        if (ref.is_object()) {
            std::vector<int> degen;
            if (ref.contains("degeneracies"))
                for (const auto& v : ref.at("degeneracies")) degen.push_back(v.get<int>());
            return SimplexRef(degen, lookup(ref.at("base").get<std::string>()));
        }
        throw JsonError("face reference must be a label or {degeneracies, base}");
    };
    for (const auto& entry : j.at("faces")) {
        SimplexId s = lookup(entry.at("simplex").get<std::string>());
        const Json& list = entry.at("faces");
        if (static_cast<int>(list.size()) != s.dim + 1)
            throw JsonError("face list arity mismatch at " + entry.at("simplex").get<std::string>());
        for (int i = 0; i <= s.dim; ++i) b.setFace(s, i, parseRef(list[i]));
    }
    if (j.contains("subspaces"))
        for (const auto& [name, gens] : j.at("subspaces").items()) {
            std::vector<SimplexId> ids;
            for (const auto& g : gens) ids.push_back(lookup(g.get<std::string>()));
            b.nameSubspace(name, ids);
        }
    return b.buildPtr();
}

SimplicialDistribution<Rational> Scenario::buildDistribution() const {
    if (!outcome) throw JsonError("scenario has no outcome space");
    std::map<SimplexId, Distribution<Rational>> given;
    for (const auto& [label, dist] : distribution_cells) given[space->byLabel(label)] = dist;
    std::vector<std::string> report;
    SimplicialDistribution<Rational> p = assembleDistribution(space, *outcome, given, &report);
    if (!report.empty()) throw JsonError("distribution table: " + report.front());
    auto violations = p.check();
    if (!violations.empty())
        throw JsonError("distribution is not simplicial at " +
                        space->label(violations.front().simplex));
    return p;
}

CommutingTupleAssignment Scenario::buildObservables() const {
    if (observables.empty()) throw JsonError("scenario has no observables");
    int qubits = parsePauli(observables.begin()->second).qubits();
    CommutingTupleAssignment A(space, qubits);
    for (const auto& [label, word] : observables) A.setEdge(label, word);
    return A;
}

DensityMatrix Scenario::buildState() const {
    if (!state) throw JsonError("scenario names no state");
    const std::string& name = *state;
    if (name == "bell_phi_plus") return bellPhiPlus();
    if (name == "ghz3") return ghz3();
    if (name.rfind("maximally_mixed", 0) == 0) {
        auto open = name.find('(');
        auto close = name.find(')');
        if (open == std::string::npos || close == std::string::npos)
            throw JsonError("malformed state '" + name + "'");
        return maximallyMixed(std::stoi(name.substr(open + 1, close - open - 1)));
    }
    throw JsonError("unknown state fixture '" + name + "'");
}

Scenario parseScenario(const Json& j) {
    Scenario sc;
    if (!j.is_object()) throw JsonError("scenario must be a JSON object");
    if (!j.contains("space")) throw JsonError("scenario is missing 'space'");
    sc.space_spec = j.at("space");
    if (sc.space_spec.contains("builtin")) {
        std::vector<int> params;
        if (sc.space_spec.contains("params"))
            for (const auto& v : sc.space_spec.at("params")) params.push_back(v.get<int>());
        sc.space = builtinSpace(sc.space_spec.at("builtin").get<std::string>(), params);
    } else if (sc.space_spec.contains("presentation")) {
        sc.space = presentationFromJson(sc.space_spec.at("presentation"));
    } else {
        throw JsonError("'space' needs either 'builtin' or 'presentation'");
    }
    if (j.contains("subspaces")) {
        // Extra subspace designations re-attach through a rebuilt space.
        Json pres = presentationToJson(*sc.space);
        if (!pres.contains("subspaces")) pres["subspaces"] = Json::object();
        for (const auto& [name, gens] : j.at("subspaces").items()) pres["subspaces"][name] = gens;
        sc.space = presentationFromJson(pres);
    }
    if (j.contains("outcome")) {
        const Json& o = j.at("outcome");
        std::string kind = o.at("kind").get<std::string>();
        int d = o.at("d").get<int>();
        if (kind == "nerve")
            sc.outcome = OutcomeSpace::nerve(d);
        else if (kind == "circle")
            sc.outcome = OutcomeSpace::circle(d);
        else if (kind == "discrete")
            sc.outcome = OutcomeSpace::discretePower(d);
        else
            throw JsonError("unknown outcome kind '" + kind + "'");
    }
    if (j.contains("distribution"))
        for (const auto& [label, cell] : j.at("distribution").items())
            sc.distribution_cells[label] = distributionFromJson(cell);
    if (j.contains("observables"))
        for (const auto& [label, word] : j.at("observables").items())
            sc.observables[label] = word.get<std::string>();
    if (j.contains("state")) sc.state = j.at("state").get<std::string>();
    if (j.contains("discrete")) {
        const Json& d = j.at("discrete");
        DiscreteScenario ds;
        for (const auto& m : d.at("measurements")) ds.measurements.push_back(m.get<std::string>());
        for (const auto& c : d.at("contexts")) {
            std::vector<int> ctx;
            for (const auto& v : c) ctx.push_back(v.get<int>());
            ds.contexts.push_back(ctx);
        }
        ds.d = d.at("d").get<int>();
        sc.discrete = ds;
        if (d.contains("tables")) {
            std::vector<Distribution<Rational>> tables;
            for (const auto& C : ds.contexts) {
                std::string label;
                for (int v : C) label += ds.measurements[v];
                if (!d.at("tables").contains(label))
                    throw JsonError("discrete tables are missing context '" + label + "'");
                tables.push_back(distributionFromJson(d.at("tables").at(label)));
            }
            sc.discrete_tables["tables"] = tables;
        }
    }
    if (j.contains("classical"))
        for (const auto& [name, block] : j.at("classical").items()) {
            ClassicalInput ci;
            ci.subspace = block.at("subspace").get<std::string>();
            for (const auto& w : block.at("weights")) {
                std::map<std::string, int> edges;
                for (const auto& [label, v] : w.at("edges").items()) edges[label] = v.get<int>();
                ci.weights.push_back({edges, ratFromJson(w.at("weight"))});
            }
            (void)name;
            sc.classical.push_back(std::move(ci));
        }
    return sc;
}

Scenario loadScenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JsonError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw JsonError("parse error in '" + path + "': " + e.what());
    }
    try {
        return parseScenario(j);
    } catch (const std::exception& e) {
        throw JsonError(std::string(e.what()) + " (in '" + path + "')");
    }
}

Json serializeScenario(const Scenario& sc) {
    Json out = Json::object();
    if (sc.space_spec.contains("builtin")) {
        out["space"] = sc.space_spec;
    } else {
        Json wrap = Json::object();
        wrap["presentation"] = presentationToJson(*sc.space);
        out["space"] = wrap;
    }
    if (sc.outcome) {
        Json o = Json::object();
        switch (sc.outcome->kind()) {
            case OutcomeSpace::Kind::Nerve:
                o["kind"] = "nerve";
                break;
            case OutcomeSpace::Kind::Circle:
                o["kind"] = "circle";
                break;
            case OutcomeSpace::Kind::DiscretePower:
                o["kind"] = "discrete";
                break;
        }
        o["d"] = sc.outcome->d();
        out["outcome"] = o;
    }
    if (!sc.distribution_cells.empty()) {
        Json dist = Json::object();
        for (const auto& [label, cell] : sc.distribution_cells)
            dist[label] = distributionToJson(cell);
        out["distribution"] = dist;
    }
    if (!sc.observables.empty()) {
        Json obs = Json::object();
        for (const auto& [label, word] : sc.observables) obs[label] = word;
        out["observables"] = obs;
    }
    if (sc.state) out["state"] = *sc.state;
    if (sc.discrete) {
        Json d = Json::object();
        d["measurements"] = sc.discrete->measurements;
        d["contexts"] = sc.discrete->contexts;
        d["d"] = sc.discrete->d;
        auto it = sc.discrete_tables.find("tables");
        if (it != sc.discrete_tables.end()) {
            Json tables = Json::object();
            for (std::size_t c = 0; c < sc.discrete->contexts.size(); ++c) {
                std::string label;
                for (int v : sc.discrete->contexts[c]) label += sc.discrete->measurements[v];
                tables[label] = distributionToJson(it->second[c]);
            }
            d["tables"] = tables;
        }
        out["discrete"] = d;
    }
    if (!sc.classical.empty()) {
        Json cl = Json::object();
        int idx = 0;
        for (const ClassicalInput& ci : sc.classical) {
            Json block = Json::object();
            block["subspace"] = ci.subspace;
            Json ws = Json::array();
            for (const auto& [edges, weight] : ci.weights) {
                Json w = Json::object();
                Json e = Json::object();
                for (const auto& [label, v] : edges) e[label] = v;
                w["edges"] = e;
                w["weight"] = ratToJson(weight);
                ws.push_back(w);
            }
            block["weights"] = ws;
            cl[idx == 0 ? "A" : "B"] = block;
            ++idx;
        }
        out["classical"] = cl;
    }
    return out;
}

std::string canonicalDump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace simpctx
