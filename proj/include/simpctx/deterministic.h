/**
 * Outcome assignments (simplicial maps into an outcome space), their
 * enumeration, classical mixtures, the map Theta into simplicial
 * distributions, supports, and restriction / pushforward along maps of
 * spaces.  For nerve outcomes an assignment is an edge labeling solving
 * f(d1 s) = f(d2 s) + f(d0 s) mod d on every 2-simplex; for general outcome
 * spaces the full simplicial map is stored.
 */
#pragma once

#include <functional>
#include <map>
#include <optional>

#include "simpctx/distribution.h"
#include "simpctx/linalg.h"

namespace simpctx {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr long kDefaultEnumerationCap = 1000000;

/// A simplicial map X -> Y into an outcome space, stored on nondegenerate
/// simplices.
class OutcomeMap {
public:
    OutcomeMap() = default;
    OutcomeMap(SSetPtr X, OutcomeSpace Y);

    const PresentedSSet& space() const { return *X_; }
    const SSetPtr& spacePtr() const { return X_; }
    const OutcomeSpace& outcomes() const { return Y_; }

    void set(SimplexId s, Outcome theta);
    const Outcome& at(SimplexId s) const { return val_[s.dim][s.id]; }
    Outcome eval(const SimplexRef& r) const;

    struct Violation {
        SimplexId simplex;
        int face;
        Outcome expected;
        Outcome found;
    };
    std::vector<Violation> check() const;
    bool isValid() const { return check().empty(); }

    /// Canonical key: tuples concatenated in (dim, id) order.
    std::vector<int> flattened() const;

    friend bool operator==(const OutcomeMap& a, const OutcomeMap& b) { return a.val_ == b.val_; }
    friend bool operator<(const OutcomeMap& a, const OutcomeMap& b) { return a.val_ < b.val_; }

private:
    SSetPtr X_;
    OutcomeSpace Y_ = OutcomeSpace::nerve(2);
    std::vector<std::vector<Outcome>> val_;
};

/// Deterministic distribution datum.  For nerve outcomes `edges` holds the
/// defining labeling of the nondegenerate edges; it is empty otherwise.
struct DeterministicAssignment {
    OutcomeMap map;
    std::vector<int> edges;

    friend bool operator==(const DeterministicAssignment& a, const DeterministicAssignment& b) {
        return a.map == b.map;
    }
    friend bool operator<(const DeterministicAssignment& a, const DeterministicAssignment& b) {
        return a.map < b.map;
    }
};

/// Builds the full outcome map determined by an edge labeling (nerve
/// outcomes): the n-tuple on a simplex reads the labels off its spine.
DeterministicAssignment assignmentFromEdges(const SSetPtr& X, const OutcomeSpace& nerve,
                                            const std::vector<int>& edges);

/// Complete solution set of the mod-d edge-labeling system, in lexicographic
/// edge order.  Constraints pin chosen edges to fixed values.  For prime d
/// the system is solved by elimination over GF(d), otherwise through the
/// integer Smith normal form; both routes produce the same set.
std::vector<DeterministicAssignment> enumerateDeterministic(
    const SSetPtr& X, const OutcomeSpace& nerve,
    const std::map<SimplexId, int>& constraints = {}, long cap = kDefaultEnumerationCap);

/// Number of solutions without materializing them.
long countDeterministic(const SSetPtr& X, const OutcomeSpace& nerve,
                        const std::map<SimplexId, int>& constraints = {},
                        long cap = kDefaultEnumerationCap);

/// Backtracking enumeration over assignments to the generating simplices
/// with face-consistency pruning; works for every outcome space with finite
/// Y_n.
std::vector<DeterministicAssignment> enumerateDeterministicGeneral(
    const SSetPtr& X, const OutcomeSpace& Y, long cap = kDefaultEnumerationCap);

/// Classical distribution: an R-weighted mixture of outcome assignments.
template <typename R>
struct ClassicalDistribution {
    SSetPtr X;
    OutcomeSpace Y = OutcomeSpace::nerve(2);
    std::vector<std::pair<DeterministicAssignment, R>> weights;

    using Traits = SemiringTraits<R>;

    void add(DeterministicAssignment r, const R& w) {
        if (Traits::isZero(w)) return;
        for (auto& [existing, weight] : weights)
            if (existing == r) {
                weight = Traits::add(weight, w);
                return;
            }
        weights.push_back({std::move(r), w});
    }
    bool isNormalized() const {
        R total = Traits::zero();
        for (const auto& [r, w] : weights) total = Traits::add(total, w);
        return total == Traits::one();
    }
};

/// Theta: the simplicial distribution of a classical mixture.
template <typename R>
SimplicialDistribution<R> theta(const ClassicalDistribution<R>& d) {
    SimplicialDistribution<R> p(d.X, d.Y);
    const PresentedSSet& X = *d.X;
    for (int dim = 0; dim <= X.maxDim(); ++dim) {
        for (int id = 0; id < X.count(dim); ++id) {
            Distribution<R> cell;
            for (const auto& [r, w] : d.weights) cell.add(r.map.at({dim, id}), w);
            p.set({dim, id}, std::move(cell));
        }
    }
    return p;
}

/// delta^r as a simplicial distribution.
template <typename R>
SimplicialDistribution<R> deltaDistribution(const DeterministicAssignment& r, const SSetPtr& X,
                                            const OutcomeSpace& Y) {
    ClassicalDistribution<R> d{X, Y, {}};
    d.add(r, SemiringTraits<R>::one());
    return theta(d);
}

/// Global assignments consistent with every local support: all s with
/// p_sigma(s_sigma) nonzero for every nondegenerate sigma.  Computed by
/// backtracking over generating simplices, pruning on zero local values.
template <typename R>
std::vector<DeterministicAssignment> support(const SimplicialDistribution<R>& p,
                                             long cap = kDefaultEnumerationCap);

/// Restriction along a map of measurement spaces f : Z -> X.
template <typename R>
SimplicialDistribution<R> restrict(const SimplicialDistribution<R>& p, const SpaceMap& f) {
    SimplicialDistribution<R> out(f.sourcePtr(), p.outcomes());
    const PresentedSSet& Z = f.source();
    for (int dim = 0; dim <= Z.maxDim(); ++dim)
        for (int id = 0; id < Z.count(dim); ++id) out.set({dim, id}, p.eval(f.at({dim, id})));
    return out;
}

/// Restriction of an outcome assignment along f : Z -> X.
DeterministicAssignment restrictAssignment(const DeterministicAssignment& r, const SpaceMap& f);

/// Restriction of a classical distribution along f (weights of equal
/// restrictions merge).
template <typename R>
ClassicalDistribution<R> restrictClassical(const ClassicalDistribution<R>& d, const SpaceMap& f) {
    ClassicalDistribution<R> out{f.sourcePtr(), d.Y, {}};
    for (const auto& [r, w] : d.weights) out.add(restrictAssignment(r, f), w);
    return out;
}

/// Pushforward along a map of outcome spaces given on outcome tuples.
template <typename R>
SimplicialDistribution<R> pushforwardOutcomes(
    const SimplicialDistribution<R>& p, const OutcomeSpace& W,
    const std::function<Outcome(const Outcome&)>& g) {
    SimplicialDistribution<R> out(p.spacePtr(), W);
    const PresentedSSet& X = p.space();
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            out.set({dim, id}, pushforwardDist<R>(g, p.at({dim, id})));
    return out;
}

DeterministicAssignment pushforwardAssignment(const DeterministicAssignment& r,
                                              const OutcomeSpace& W,
                                              const std::function<Outcome(const Outcome&)>& g);

template <typename R>
ClassicalDistribution<R> pushforwardClassical(const ClassicalDistribution<R>& d,
                                              const OutcomeSpace& W,
                                              const std::function<Outcome(const Outcome&)>& g) {
    ClassicalDistribution<R> out{d.X, W, {}};
    for (const auto& [r, w] : d.weights) out.add(pushforwardAssignment(r, W, g), w);
    return out;
}

/// Change of semiring for classical mixtures.
template <typename S, typename R, typename Phi>
ClassicalDistribution<S> semiringMapClassical(const Phi& phi, const ClassicalDistribution<R>& d) {
    ClassicalDistribution<S> out{d.X, d.Y, {}};
    for (const auto& [r, w] : d.weights) out.add(r, phi(w));
    return out;
}

/// Glues compatible classical distributions on subspaces A, B with
/// A union B = X:  d(r) = dA(r|A) dB(r|B) / dA|_{A^B}(r|_{A^B}), with the
/// 0/0 convention resolving to 0.  Requires a semifield.
template <typename R>
ClassicalDistribution<R> glueClassical(const ClassicalDistribution<R>& dA, const SpaceMap& inclA,
                                       const ClassicalDistribution<R>& dB, const SpaceMap& inclB,
                                       long cap = kDefaultEnumerationCap);

// --- implementation ---

namespace detail {

struct GeneratorPlan {
    std::vector<SimplexId> generators;
    // Derivation route per nondegenerate simplex: index of a generator and
    // the operator word evaluating to that simplex.
    std::vector<std::vector<std::pair<int, OperatorWord>>> route;  // [dim][id]
    std::vector<std::vector<SimplexId>> derived;                   // per generator
};

GeneratorPlan planGenerators(const PresentedSSet& X);

// Backtracking core shared by general enumeration and support computation:
// `candidates(g)` yields admissible outcomes for generator g, `admits`
// filters derived values; complete maps passing check() are reported.
void enumerateMaps(const SSetPtr& X, const OutcomeSpace& Y, const GeneratorPlan& plan,
                   const std::function<std::vector<Outcome>(int, SimplexId)>& candidates,
                   const std::function<bool(SimplexId, const Outcome&)>& admits,
                   const std::function<void(const OutcomeMap&)>& emit, long cap);

}  // namespace detail

template <typename R>
std::vector<DeterministicAssignment> support(const SimplicialDistribution<R>& p, long cap) {
    using Traits = SemiringTraits<R>;
    const SSetPtr& X = p.spacePtr();
    const OutcomeSpace& Y = p.outcomes();
    detail::GeneratorPlan plan = detail::planGenerators(*X);
    std::vector<DeterministicAssignment> out;
    detail::enumerateMaps(
        X, Y, plan,
        [&](int, SimplexId g) {
            std::vector<Outcome> c;
            for (const auto& [theta, value] : p.at(g).support()) c.push_back(theta);
            return c;
        },
        [&](SimplexId s, const Outcome& theta) { return !Traits::isZero(p.at(s).at(theta)); },
        [&](const OutcomeMap& m) {
            DeterministicAssignment r;
            r.map = m;
            if (Y.kind() == OutcomeSpace::Kind::Nerve) {
                r.edges.resize(X->count(1));
                for (int id = 0; id < X->count(1); ++id) r.edges[id] = m.at({1, id})[0];
            }
            out.push_back(std::move(r));
        },
        cap);
    std::sort(out.begin(), out.end());
    return out;
}

template <typename R>
ClassicalDistribution<R> glueClassical(const ClassicalDistribution<R>& dA, const SpaceMap& inclA,
                                       const ClassicalDistribution<R>& dB, const SpaceMap& inclB,
                                       long cap) {
    using Traits = SemiringTraits<R>;
    static_assert(SemiringTraits<R>::isSemifield, "gluing needs a semifield");
    if (inclA.targetPtr() != inclB.targetPtr())
        throw std::invalid_argument("glueClassical: subspaces of different spaces");
    const SSetPtr& X = inclA.targetPtr();
    const OutcomeSpace& Y = dA.Y;

    // A union B must cover X.
    std::vector<std::vector<bool>> covered(X->maxDim() + 1);
    for (int dim = 0; dim <= X->maxDim(); ++dim) covered[dim].assign(X->count(dim), false);
    for (const SpaceMap* f : {&inclA, &inclB})
        for (int dim = 0; dim <= f->source().maxDim(); ++dim)
            for (int id = 0; id < f->source().count(dim); ++id) {
                const SimplexRef& img = f->at({dim, id});
                covered[img.base.dim][img.base.id] = true;
            }
    for (int dim = 0; dim <= X->maxDim(); ++dim)
        for (int id = 0; id < X->count(dim); ++id)
            if (!covered[dim][id])
                throw std::invalid_argument("glueClassical: subspaces do not cover the space");

    // Shared subspace: simplices in the image of both inclusions.  Maps from
    // X back into the inclusion sources are precomputed id tables.
    auto imageIndex = [&](const SpaceMap& f) {
        std::map<SimplexId, SimplexId> inv;
        for (int dim = 0; dim <= f.source().maxDim(); ++dim)
            for (int id = 0; id < f.source().count(dim); ++id)
                inv[f.at({dim, id}).base] = {dim, id};
        return inv;
    };
    std::map<SimplexId, SimplexId> invA = imageIndex(inclA);
    std::map<SimplexId, SimplexId> invB = imageIndex(inclB);
    std::vector<SimplexId> sharedGens;
    for (const auto& [xs, as] : invA)
        if (invB.count(xs)) sharedGens.push_back(xs);
    SubspaceResult shared = materialize(X, Subspace(*X, sharedGens));
    const PresentedSSet& S = *shared.space;

    // Restriction to the shared presentation of an assignment living on the
    // source of one of the inclusions.
    auto restrictToShared = [&](const DeterministicAssignment& r,
                                const std::map<SimplexId, SimplexId>& inv) {
        OutcomeMap m(shared.space, Y);
        for (int dim = 0; dim <= S.maxDim(); ++dim)
            for (int id = 0; id < S.count(dim); ++id) {
                SimplexId inX = shared.inclusion.at({dim, id}).base;
                m.set({dim, id}, r.map.at(inv.at(inX)));
            }
        return m.flattened();
    };

    std::map<std::vector<int>, R> wA, wB, wShared, wSharedB;
    auto accumulate = [&](std::map<std::vector<int>, R>& table, const std::vector<int>& key,
                          const R& w) {
        auto it = table.find(key);
        if (it == table.end())
            table[key] = w;
        else
            it->second = Traits::add(it->second, w);
    };
    for (const auto& [r, w] : dA.weights) {
        accumulate(wA, r.map.flattened(), w);
        accumulate(wShared, restrictToShared(r, invA), w);
    }
    for (const auto& [r, w] : dB.weights) {
        accumulate(wB, r.map.flattened(), w);
        accumulate(wSharedB, restrictToShared(r, invB), w);
    }
    if (wShared != wSharedB)
        throw std::invalid_argument("glueClassical: incompatible restrictions on the overlap");

    std::vector<DeterministicAssignment> all = enumerateDeterministicGeneral(X, Y, cap);
    ClassicalDistribution<R> out{X, Y, {}};
    for (const DeterministicAssignment& r : all) {
        DeterministicAssignment rA = restrictAssignment(r, inclA);
        DeterministicAssignment rB = restrictAssignment(r, inclB);
        auto ita = wA.find(rA.map.flattened());
        auto itb = wB.find(rB.map.flattened());
        if (ita == wA.end() || itb == wB.end()) continue;
        auto its = wShared.find(restrictToShared(rA, invA));
        R denom = its == wShared.end() ? Traits::zero() : its->second;
        if (Traits::isZero(denom)) continue;  // a zero denominator forces a zero numerator
        out.add(r, Traits::div(Traits::mul(ita->second, itb->second), denom));
    }
    return out;
}

}  // namespace simpctx
