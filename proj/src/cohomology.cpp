#include "simpctx/cohomology.h"

namespace simpctx {

namespace {

int mod(long v, int d) { return static_cast<int>(((v % d) + d) % d); }

}  // namespace

Cochain Cochain::zero(SSetPtr X, int dim, int d) {
    Cochain f;
    f.dim = dim;
    f.modulus = d;
    f.values.assign(X->count(dim), 0);
    f.space = std::move(X);
    return f;
}

bool Cochain::isZero() const {
    for (int v : values)
        if (v % modulus != 0) return false;
    return true;
}

Cochain operator-(const Cochain& a, const Cochain& b) {
    if (a.space != b.space || a.dim != b.dim || a.modulus != b.modulus)
        throw CohomologyError("cochain mismatch");
    Cochain out = a;
    for (std::size_t k = 0; k < out.values.size(); ++k)
        out.values[k] = mod(a.values[k] - b.values[k], a.modulus);
    return out;
}

Cochain coboundary(const Cochain& f) {
    const PresentedSSet& X = *f.space;
    if (f.dim + 1 > X.maxDim())
        throw CohomologyError("coboundary exceeds the maximal dimension of the space");
    Cochain out = Cochain::zero(f.space, f.dim + 1, f.modulus);
    for (int id = 0; id < X.count(f.dim + 1); ++id) {
        long total = 0;
        for (int i = 0; i <= f.dim + 1; ++i) {
            SimplexRef t = X.tableFace({f.dim + 1, id}, i);
            int sign = (i % 2 == 0) ? 1 : -1;
            total += sign * f.eval(t);
        }
        out.values[id] = mod(total, f.modulus);
    }
    return out;
}

IntegerMatrix deltaMatrix(const PresentedSSet& X, int n) {
    IntegerMatrix D = IntegerMatrix::Zero(X.count(n + 1), X.count(n));
    for (int id = 0; id < X.count(n + 1); ++id)
        for (int i = 0; i <= n + 1; ++i) {
            SimplexRef t = X.tableFace({n + 1, id}, i);
            if (t.isDegenerate()) continue;
            D(id, t.base.id) += (i % 2 == 0) ? 1 : -1;
        }
    return D;
}

ZeroClassResult isZeroClass(const CohomologyClass& c) {
    const PresentedSSet& X = *c.rep.space;
    const int n = c.rep.dim;
    ZeroClassResult out;
    if (n == 0) {
        // im(delta_{-1}) = 0: zero iff the representative vanishes.
        out.is_zero = c.rep.isZero();
        if (out.is_zero) out.preimage = Cochain();
        return out;
    }
    IntegerMatrix D = deltaMatrix(X, n - 1);
    IntegerVector b(X.count(n));
    for (int id = 0; id < X.count(n); ++id) b(id) = c.rep.values[id];
    ModSolutions sols = solveMod(D, b, c.rep.modulus);
    out.is_zero = sols.solvable;
    if (sols.solvable) {
        Cochain t = Cochain::zero(c.rep.space, n - 1, c.rep.modulus);
        t.values = sols.particular;
        out.preimage = std::move(t);
    }
    return out;
}

bool sameClass(const CohomologyClass& a, const CohomologyClass& b) {
    if (a.rep.space != b.rep.space || a.rep.dim != b.rep.dim || a.rep.modulus != b.rep.modulus)
        return false;
    return isZeroClass({a.rep - b.rep}).is_zero;
}

H1Result h1(const SSetPtr& X, int d) {
    if (d < 2) throw CohomologyError("h1: modulus must be at least 2");
    const int E = X->count(1);
    const int V = X->count(0);
    IntegerMatrix D1 =
        X->maxDim() >= 2 ? deltaMatrix(*X, 1) : IntegerMatrix::Zero(0, E);
    IntegerMatrix D0 = deltaMatrix(*X, 0);
    Integer D(d);

    // Lattice of integer 1-cochains that are cocycles mod d: in the Smith
    // coordinates of D1 the lattice is coordinate-wise, with basis K.
    SmithForm f = smithNormalForm(D1);
    IntegerMatrix K = f.V;
    for (int k = 0; k < E; ++k) {
        Integer t(1);
        if (k < f.rank) {
            Integer g;
            Integer s = f.diag(k);
            mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), D.get_mpz_t());
            t = D / g;
        }
        K.col(k) *= t;
    }

    // Subgroup im(delta_0) + d Z^E expressed in the K-basis.
    IntegerMatrix B(E, V + E);
    B.block(0, 0, E, V) = D0;
    B.block(0, V, E, E) = IntegerMatrix::Identity(E, E) * D;
    RationalMatrix Kq(E, E), Bq(E, V + E);
    for (int r = 0; r < E; ++r) {
        for (int c = 0; c < E; ++c) Kq(r, c) = Rational(K(r, c));
        for (int c = 0; c < V + E; ++c) Bq(r, c) = Rational(B(r, c));
    }
    auto Mq = solveLinear(Kq, Bq);
    if (!Mq) throw CohomologyError("h1: cocycle lattice basis is singular");
    IntegerMatrix M(E, V + E);
    for (int r = 0; r < E; ++r)
        for (int c = 0; c < V + E; ++c) {
            if ((*Mq)(r, c).get_den() != 1)
                throw CohomologyError("h1: subgroup is not contained in the cocycle lattice");
            M(r, c) = (*Mq)(r, c).get_num();
        }

    H1Result out;
    SmithForm fm = smithNormalForm(M);
    // U maps the K-coordinates; generators of the quotient are K U^{-1} e_k.
    RationalMatrix Uq(E, E);
    for (int r = 0; r < E; ++r)
        for (int c = 0; c < E; ++c) Uq(r, c) = Rational(fm.U(r, c));
    auto Uinv = solveLinear(Uq, RationalMatrix::Identity(E, E));
    if (!Uinv) throw CohomologyError("h1: transform not invertible");
    for (int k = 0; k < E; ++k) {
        Integer s = k < fm.rank ? fm.diag(k) : Integer(0);
        if (s == 1) continue;
        out.invariants.push_back(s);
        Cochain rep = Cochain::zero(X, 1, d);
        for (int r = 0; r < E; ++r) {
            Rational val(0);
            for (int c = 0; c < E; ++c) val += Kq(r, c) * (*Uinv)(c, k);
            if (val.get_den() != 1) throw CohomologyError("h1: representative not integral");
            rep.values[r] = mod(val.get_num().get_si(), d);
        }
        out.basis.push_back(std::move(rep));
    }
    return out;
}

CohomologyClass alpha(const DeterministicAssignment& r) {
    if (r.map.outcomes().kind() != OutcomeSpace::Kind::Nerve)
        throw CohomologyError("alpha expects nerve outcomes");
    const PresentedSSet& X = r.map.space();
    Cochain f = Cochain::zero(r.map.spacePtr(), 1, r.map.outcomes().d());
    for (int id = 0; id < X.count(1); ++id) f.values[id] = mod(r.map.at({1, id})[0], f.modulus);
    return {std::move(f)};
}

CohomologyClass connecting(const SSetPtr& X, const Subspace& Z, const std::map<SimplexId, int>& f,
                           int d, QuotientResult* quotient_out) {
    // The input must be a cocycle on Z: evaluate the alternating sum over
    // every 2-simplex of Z.
    auto valueAt = [&](const SimplexRef& r) -> int {
        if (r.isDegenerate()) return 0;
        auto it = f.find(r.base);
        return it == f.end() ? 0 : mod(it->second, d);
    };
    for (const SimplexId& s : Z.all()) {
        if (s.dim != 2) continue;
        long total = 0;
        for (int i = 0; i <= 2; ++i)
            total += ((i % 2 == 0) ? 1 : -1) * valueAt(X->tableFace(s, i));
        if (mod(total, d) != 0) throw CohomologyError("connecting: input is not a cocycle on Z");
    }
    for (const auto& [s, v] : f) {
        if (s.dim != 1) throw CohomologyError("connecting: input must be a 1-cochain");
        if (!Z.contains(s)) throw CohomologyError("connecting: cochain supported outside Z");
    }

    // Zero-extension lift and its coboundary on X.
    Cochain lift = Cochain::zero(X, 1, d);
    for (const auto& [s, v] : f) lift.values[s.id] = mod(v, d);
    Cochain db = coboundary(lift);

    // Restriction to the quotient: the surviving 2-simplices keep their
    // values, the basepoint contributes 0.
    QuotientResult quo = quotient(X, Z);
    Cochain bar = Cochain::zero(quo.space, 2, d);
    for (int id = 0; id < X->count(2); ++id) {
        if (Z.contains(SimplexId{2, id})) continue;
        SimplexRef img = quo.projection.at({2, id});
        bar.values[img.base.id] = db.values[id];
    }
    if (quotient_out) *quotient_out = std::move(quo);
    return {std::move(bar)};
}

WitnessResult clWitness(const SimplicialDistribution<Rational>& p, const Subspace& Z, long cap) {
    if (p.outcomes().kind() != OutcomeSpace::Kind::Nerve)
        throw CohomologyError("clWitness expects nerve outcomes");
    const int d = p.outcomes().d();
    SubspaceResult sub = materialize(p.spacePtr(), Z);
    SimplicialDistribution<Rational> pZ = restrict(p, sub.inclusion);

    WitnessResult out;
    out.boundary_support = support(pZ, cap);
    QuotientResult quo = quotient(p.spacePtr(), Z);
    out.quotient_space = quo.space;
    if (out.boundary_support.empty()) {
        out.verdict = WitnessResult::Verdict::Vacuous;
        return out;
    }
    bool any_zero = false;
    for (const DeterministicAssignment& s : out.boundary_support) {
        std::map<SimplexId, int> f;
        const PresentedSSet& Zs = sub.inclusion.source();
        for (int id = 0; id < Zs.count(1); ++id)
            f[sub.inclusion.at({1, id}).base] = s.map.at({1, id})[0];
        CohomologyClass cls = connecting(p.spacePtr(), Z, f, d);
        if (isZeroClass(cls).is_zero) any_zero = true;
        out.classes.push_back(std::move(cls));
    }
    out.verdict = any_zero ? WitnessResult::Verdict::Inconclusive
                           : WitnessResult::Verdict::StronglyContextualByWitness;
    return out;
}

}  // namespace simpctx
