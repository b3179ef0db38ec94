/**
 * Decision procedures: noncontextuality by exact LP feasibility over the
 * deterministic vertices with re-verifiable certificates (a mixture or a
 * separating Bell-type functional), strong and logical contextuality, CHSH
 * checks, extension solving, facet enumeration of classical polytopes, and
 * the embedding of discrete scenarios.
 */
#pragma once

#include "simpctx/deterministic.h"
#include "simpctx/lp.h"

namespace simpctx {

/// Rational functional on distribution cells with <c, Theta(delta^r)> <= bound
/// for every deterministic r and <c, p> > bound for the tested p.
struct SeparatingFunctional {
    std::vector<std::pair<SimplexId, Outcome>> cells;
    std::vector<Rational> coeff;
    Rational bound;

    Rational valueAt(const SimplicialDistribution<Rational>& p) const;
    Rational valueAtAssignment(const DeterministicAssignment& r) const;
};

struct ContextualityVerdict {
    bool contextual = false;
    std::optional<ClassicalDistribution<Rational>> mixture;
    std::optional<SeparatingFunctional> functional;
};

/// Exact LP membership test for the image of Theta.  The returned witness is
/// re-verified before returning; enumeration beyond `cap` deterministic
/// assignments raises ResourceError rather than guessing.
ContextualityVerdict isNoncontextual(const SimplicialDistribution<Rational>& p,
                                     long cap = kDefaultEnumerationCap);

struct StrongContextualityReport {
    bool strongly_contextual = false;
    std::vector<DeterministicAssignment> support;
};
StrongContextualityReport isStronglyContextual(const SimplicialDistribution<Rational>& p,
                                               long cap = kDefaultEnumerationCap);

/// Contextuality of the Boolean-semiring shadow: some locally possible
/// outcome is realized by no global support assignment.
bool isLogicallyContextual(const SimplicialDistribution<Rational>& p,
                           long cap = kDefaultEnumerationCap);

struct ChshReport {
    std::array<Rational, 4> sums;      // one per inequality pair
    std::array<bool, 4> satisfied;     // 0 <= sum <= 2
    Rational max_value;
    bool all_satisfied = false;
    std::array<Rational, 4> edge_p0;   // marginals on the four XOR edges
};

/// The four XOR edges of a CHSH-type space in the order
/// (x0+y0, x0+y1, x1+y0, x1+y1); resolves the labels used by the builtins.
std::array<SimplexId, 4> chshEdges(const PresentedSSet& X);

ChshReport chshCheck(const SimplicialDistribution<Rational>& p);
ChshReport chshCheck(const SimplicialDistribution<Rational>& p,
                     const std::array<SimplexId, 4>& edges);

/// Extension of p along a dimension-preserving inclusion f : Z -> X of
/// measurement spaces, by exact feasibility on the unknown cells.
struct ExtensionResult {
    bool feasible = false;
    std::optional<SimplicialDistribution<Rational>> extension;
    RationalVector farkas;                // certificate over the listed rows
    std::vector<std::string> row_labels;  // human-readable row descriptions
};
ExtensionResult solveExtension(const SimplicialDistribution<Rational>& p, const SpaceMap& f);

/// Inclusion X -> W resolved by matching simplex labels; every simplex of X
/// must appear in W with the same label, and the result is face-checked.
SpaceMap inclusionByLabels(const SSetPtr& X, const SSetPtr& W);

/// The explicit extension of a boundary distribution on del Delta^3 to the
/// 3-simplex: the (0,0,0) weight is the minimum of the four facet (0,0)
/// probabilities and the rest follows from the marginals.
Distribution<Rational> minExtensionDelta3(const SimplicialDistribution<Rational>& p);

/// Coordinate of a facet computation: the probability p_simplex(outcome).
struct CellCoordinate {
    SimplexId simplex;
    Outcome outcome;
    std::string name;
};

/// Facets of the convex hull of {Theta(delta^r)} in the given coordinates.
/// Double description for at most 64 vertices, Fourier-Motzkin above that.
HullDescription classicalFacets(const SSetPtr& X, const OutcomeSpace& Y,
                                const std::vector<CellCoordinate>& coords,
                                long cap = kDefaultEnumerationCap);

/// Discrete scenario (M, contexts, Z_d) embedded as a simplicial scenario.
struct DiscreteScenario {
    std::vector<std::string> measurements;       // totally ordered by index
    std::vector<std::vector<int>> contexts;      // strictly increasing index tuples
    int d = 2;
};
struct DiscreteEmbedding {
    SSetPtr space;
    OutcomeSpace outcomes = OutcomeSpace::discretePower(2);
    std::vector<std::vector<int>> contexts;
};
DiscreteEmbedding discreteEmbed(const DiscreteScenario& sc);

/// Nonsignaling table <-> simplicial distribution, an exact inverse pair.
/// Tables list, per context, a distribution on functions C -> Z_d encoded as
/// outcome tuples in the context's measurement order.
SimplicialDistribution<Rational> tableToDistribution(
    const DiscreteEmbedding& emb, const std::vector<Distribution<Rational>>& tables);
std::vector<Distribution<Rational>> distributionToTable(
    const DiscreteEmbedding& emb, const SimplicialDistribution<Rational>& p);

}  // namespace simpctx
