/**
 * Scenario file I/O.  A scenario bundles a measurement space (builtin or
 * explicit presentation), an outcome space, and optionally a distribution
 * table, an observable table, named subspaces, classical mixtures, and a
 * discrete-scenario block.  Rationals serialize as "a/b" strings; the
 * serializer emits a canonical key order so canonical files round-trip
 * byte-identically.
 */
#pragma once

#include "json.hpp"
#include "simpctx/quantum.h"

namespace simpctx {

struct JsonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

struct ClassicalInput {
    std::string subspace;  // named subspace the mixture lives on
    std::vector<std::pair<std::map<std::string, int>, Rational>> weights;  // edge label -> value
};

struct Scenario {
    Json space_spec;  // as read: {"builtin": ...} or {"presentation": ...}
    SSetPtr space;
    std::optional<OutcomeSpace> outcome;
    std::map<std::string, Distribution<Rational>> distribution_cells;  // by simplex label
    std::map<std::string, std::string> observables;                    // edge label -> Pauli
    std::optional<std::string> state;
    std::optional<DiscreteScenario> discrete;
    std::map<std::string, std::vector<Distribution<Rational>>> discrete_tables;  // keyed "tables"
    std::vector<ClassicalInput> classical;

    /// Assembles the full simplicial distribution from the cells.
    SimplicialDistribution<Rational> buildDistribution() const;
    CommutingTupleAssignment buildObservables() const;
    DensityMatrix buildState() const;
};

Scenario parseScenario(const Json& j);
Scenario loadScenario(const std::string& path);
Json serializeScenario(const Scenario& sc);

Json distributionToJson(const Distribution<Rational>& p);
Distribution<Rational> distributionFromJson(const Json& j);

Json assignmentToJson(const DeterministicAssignment& r);

/// Presentation of a space as JSON (inverse of the parser for explicit
/// presentations).
Json presentationToJson(const PresentedSSet& X);
SSetPtr presentationFromJson(const Json& j);

std::string canonicalDump(const Json& j);

}  // namespace simpctx
