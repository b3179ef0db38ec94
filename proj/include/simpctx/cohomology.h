/**
 * Mod-d simplicial cochains on presented spaces (normalized: degenerate
 * simplices carry 0), coboundaries, H^1, the connecting homomorphism into
 * H^2 of the quotient, and the resulting one-sided strong-contextuality
 * witness.  All Z_d linear algebra runs through the integer Smith normal
 * form, uniformly over prime and composite d.
 */
#pragma once

#include "simpctx/contextuality.h"

namespace simpctx {

struct CohomologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cochain in C^n(X; Z_d): a value per nondegenerate n-simplex.
struct Cochain {
    SSetPtr space;
    int dim = 0;
    int modulus = 2;
    std::vector<int> values;  // indexed by simplex id, values in [0, d)

    static Cochain zero(SSetPtr X, int dim, int d);
    int at(int id) const { return values[id]; }
    /// Value at a possibly-degenerate reference (0 on degenerates).
    int eval(const SimplexRef& r) const { return r.isDegenerate() ? 0 : values[r.base.id]; }
    bool isZero() const;
    friend Cochain operator-(const Cochain& a, const Cochain& b);
};

/// Alternating face sum; requires dim+1 <= maxDim of the space.
Cochain coboundary(const Cochain& f);

/// Matrix of delta_n : C^n -> C^{n+1} over Z (reduced mod d by callers).
IntegerMatrix deltaMatrix(const PresentedSSet& X, int n);

struct CohomologyClass {
    Cochain rep;  // a cocycle when rep.dim + 1 <= maxDim
};

struct ZeroClassResult {
    bool is_zero = false;
    std::optional<Cochain> preimage;  // t with coboundary(t) = rep when zero
};
/// Decides membership of the representative in the image of delta.
ZeroClassResult isZeroClass(const CohomologyClass& c);

/// Same ambient space and cohomologous representatives.
bool sameClass(const CohomologyClass& a, const CohomologyClass& b);

struct H1Result {
    std::vector<Integer> invariants;     // cyclic orders, 1s dropped
    std::vector<Cochain> basis;          // representative cocycles
};
/// H^1(X; Z_d) = ker(delta_1) / im(delta_0) via integer Smith normal form.
H1Result h1(const SSetPtr& X, int d);

/// The 1-cochain of an outcome assignment into the nerve (its edge labels).
CohomologyClass alpha(const DeterministicAssignment& r);

/// Connecting homomorphism H^1(Z) -> H^2(X/Z): zero-extend the cocycle,
/// take its coboundary, restrict to the quotient.  `f` is keyed by the
/// ambient edge ids lying in Z.
CohomologyClass connecting(const SSetPtr& X, const Subspace& Z, const std::map<SimplexId, int>& f,
                           int d, QuotientResult* quotient_out = nullptr);

/// cl_Z(p) and the one-sided verdict of the witness.
struct WitnessResult {
    enum class Verdict { StronglyContextualByWitness, Inconclusive, Vacuous };
    Verdict verdict = Verdict::Inconclusive;
    std::vector<CohomologyClass> classes;       // one per support element of p|_Z
    std::vector<DeterministicAssignment> boundary_support;
    SSetPtr quotient_space;
};
WitnessResult clWitness(const SimplicialDistribution<Rational>& p, const Subspace& Z,
                        long cap = kDefaultEnumerationCap);

}  // namespace simpctx
