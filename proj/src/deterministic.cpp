#include "simpctx/deterministic.h"

#include <algorithm>

namespace simpctx {

OutcomeMap::OutcomeMap(SSetPtr X, OutcomeSpace Y) : X_(std::move(X)), Y_(std::move(Y)) {
    val_.resize(X_->maxDim() + 1);
    for (int dim = 0; dim <= X_->maxDim(); ++dim)
        val_[dim].resize(X_->count(dim), Outcome(Y_.tupleLength(dim), -1));
    if (Y_.kind() != OutcomeSpace::Kind::DiscretePower)
        for (int id = 0; id < X_->count(0); ++id) val_[0][id] = Outcome{};
}

void OutcomeMap::set(SimplexId s, Outcome theta) {
    if (!Y_.contains(theta, s.dim)) throw OutcomeError("outcome not in the outcome space");
    val_[s.dim][s.id] = std::move(theta);
}

Outcome OutcomeMap::eval(const SimplexRef& r) const {
    const Outcome& base = at(r.base);
    if (!r.isDegenerate()) return base;
    return Y_.apply(base, OperatorWord::degeneracies(r.degeneracies));
}

std::vector<OutcomeMap::Violation> OutcomeMap::check() const {
    std::vector<Violation> out;
    for (int dim = 1; dim <= X_->maxDim(); ++dim) {
        for (int id = 0; id < X_->count(dim); ++id) {
            for (int i = 0; i <= dim; ++i) {
                Outcome found = Y_.face(at({dim, id}), i);
                Outcome expected = eval(X_->tableFace({dim, id}, i));
                if (found != expected) out.push_back({{dim, id}, i, expected, found});
            }
        }
    }
    return out;
}

std::vector<int> OutcomeMap::flattened() const {
    std::vector<int> out;
    for (const auto& row : val_)
        for (const auto& theta : row) {
            out.insert(out.end(), theta.begin(), theta.end());
            out.push_back(-1);  // separator
        }
    return out;
}

DeterministicAssignment assignmentFromEdges(const SSetPtr& X, const OutcomeSpace& nerve,
                                            const std::vector<int>& edges) {
    if (nerve.kind() != OutcomeSpace::Kind::Nerve)
        throw OutcomeError("assignmentFromEdges expects nerve outcomes");
    if (static_cast<int>(edges.size()) != X->count(1))
        throw OutcomeError("edge labeling has the wrong length");
    DeterministicAssignment r;
    r.edges = edges;
    r.map = OutcomeMap(X, nerve);
    for (int dim = 1; dim <= X->maxDim(); ++dim) {
        for (int id = 0; id < X->count(dim); ++id) {
            Outcome theta(dim);
            for (int i = 1; i <= dim; ++i) {
                SimplexRef e = X->spineEdge({dim, id}, i);
                theta[i - 1] = e.isDegenerate() ? 0 : edges[e.base.id];
            }
            r.map.set({dim, id}, std::move(theta));
        }
    }
    return r;
}

namespace {

// Rows of the mod-d edge system: one relation per nondegenerate 2-simplex,
// then one row per pinned edge.
void buildEdgeSystem(const PresentedSSet& X, const std::map<SimplexId, int>& constraints,
                     IntegerMatrix* A, IntegerVector* b) {
    const int n = X.count(1);
    const int m = X.count(2) + static_cast<int>(constraints.size());
    *A = IntegerMatrix::Zero(m, n);
    *b = IntegerVector::Zero(m);
    for (int id = 0; id < X.count(2); ++id) {
        const int coeff[3] = {-1, 1, -1};  // f(d1) - f(d0) - f(d2) = 0
        for (int i = 0; i <= 2; ++i) {
            SimplexRef t = X.tableFace({2, id}, i);
            if (t.isDegenerate()) continue;
            (*A)(id, t.base.id) += coeff[i];
        }
    }
    int row = X.count(2);
    for (const auto& [edge, value] : constraints) {
        if (edge.dim != 1 || edge.id < 0 || edge.id >= n)
            throw OutcomeError("constraint on a simplex that is not an edge");
        (*A)(row, edge.id) = 1;
        (*b)(row) = value;
        ++row;
    }
}

std::vector<std::vector<int>> solutionsPrime(const IntegerMatrix& A, const IntegerVector& b, int p,
                                             long cap, bool count_only, long* count) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    std::vector<std::vector<int>> rows(m, std::vector<int>(n + 1, 0));
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < n; ++c)
            rows[r][c] = static_cast<int>(mpz_class(((A(r, c) % p) + p) % p).get_si());
        rows[r][n] = static_cast<int>(mpz_class(((b(r) % p) + p) % p).get_si());
    }
    int rank = echelonModP(rows, p);
    // Reduced echelon: the pivot of each row is its first nonzero entry.
    // A pivot landing on the rhs column reads 0 = 1: no solutions.
    std::vector<int> pivots;
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (c <= n && rows[r][c] == 0) ++c;
        if (c == n) {
            *count = 0;
            return {};
        }
        if (c < n) pivots.push_back(c);
    }
    std::vector<int> freevars;
    {
        std::vector<bool> ispivot(n, false);
        for (int c : pivots) ispivot[c] = true;
        for (int c = 0; c < n; ++c)
            if (!ispivot[c]) freevars.push_back(c);
    }
    long total = 1;
    for (std::size_t k = 0; k < freevars.size(); ++k) {
        if (total > cap / p) {
            total = cap + 1;
            break;
        }
        total *= p;
    }
    *count = total;
    if (count_only) return {};
    if (total > cap) throw ResourceError("deterministic enumeration exceeds the cap");

    std::vector<std::vector<int>> out;
    std::vector<int> free_assign(freevars.size(), 0);
    while (true) {
        std::vector<int> x(n, 0);
        for (std::size_t k = 0; k < freevars.size(); ++k) x[freevars[k]] = free_assign[k];
        for (int r = static_cast<int>(pivots.size()) - 1; r >= 0; --r) {
            long v = rows[r][n];
            for (int c = pivots[r] + 1; c < n; ++c) v -= static_cast<long>(rows[r][c]) * x[c];
            x[pivots[r]] = static_cast<int>(((v % p) + p) % p);
        }
        out.push_back(std::move(x));
        std::size_t k = 0;
        for (; k < free_assign.size(); ++k) {
            if (++free_assign[k] < p) break;
            free_assign[k] = 0;
        }
        if (k == free_assign.size()) break;
    }
    return out;
}

bool isPrime(int d) {
    if (d < 2) return false;
    for (int k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

}  // namespace

std::vector<DeterministicAssignment> enumerateDeterministic(
    const SSetPtr& X, const OutcomeSpace& nerve, const std::map<SimplexId, int>& constraints,
    long cap) {
    if (nerve.kind() != OutcomeSpace::Kind::Nerve)
        throw OutcomeError("enumerateDeterministic expects nerve outcomes");
    IntegerMatrix A;
    IntegerVector b;
    buildEdgeSystem(*X, constraints, &A, &b);
    const int d = nerve.d();
    std::vector<std::vector<int>> labelings;
    if (isPrime(d)) {
        long count = 0;
        labelings = solutionsPrime(A, b, d, cap, false, &count);
    } else {
        try {
            labelings = enumerateMod(solveMod(A, b, d), d, cap);
        } catch (const std::length_error&) {
            throw ResourceError("deterministic enumeration exceeds the cap");
        }
    }
    std::sort(labelings.begin(), labelings.end());
    std::vector<DeterministicAssignment> out;
    out.reserve(labelings.size());
    for (const auto& edges : labelings) out.push_back(assignmentFromEdges(X, nerve, edges));
    return out;
}

long countDeterministic(const SSetPtr& X, const OutcomeSpace& nerve,
                        const std::map<SimplexId, int>& constraints, long cap) {
    if (nerve.kind() != OutcomeSpace::Kind::Nerve)
        throw OutcomeError("countDeterministic expects nerve outcomes");
    IntegerMatrix A;
    IntegerVector b;
    buildEdgeSystem(*X, constraints, &A, &b);
    const int d = nerve.d();
    if (isPrime(d)) {
        long count = 0;
        solutionsPrime(A, b, d, cap, true, &count);
        return count;
    }
    ModSolutions sols = solveMod(A, b, d);
    if (!sols.solvable) return 0;
    return sols.countBound(cap);
}

namespace detail {

GeneratorPlan planGenerators(const PresentedSSet& X) {
    GeneratorPlan plan;
    plan.generators = X.generators();
    plan.route.resize(X.maxDim() + 1);
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        plan.route[dim].assign(X.count(dim), {-1, OperatorWord()});
    plan.derived.resize(plan.generators.size());

    for (int gi = 0; gi < static_cast<int>(plan.generators.size()); ++gi) {
        SimplexId g = plan.generators[gi];
        // BFS over iterated faces, recording one route word per simplex.
        std::vector<std::pair<SimplexId, OperatorWord>> queue = {{g, OperatorWord()}};
        if (plan.route[g.dim][g.id].first < 0) plan.route[g.dim][g.id] = {gi, OperatorWord()};
        std::size_t head = 0;
        while (head < queue.size()) {
            auto [s, w] = queue[head++];
            if (s.dim == 0) continue;
            for (int i = 0; i <= s.dim; ++i) {
                SimplexRef t = X.tableFace(s, i);
                if (plan.route[t.base.dim][t.base.id].first >= 0) continue;
                OperatorWord w2 = composeWords(OperatorWord::face(i), w, g.dim);
                for (int j : t.degeneracies) w2 = composeWords(OperatorWord::face(j), w2, g.dim);
                plan.route[t.base.dim][t.base.id] = {gi, w2};
                queue.push_back({t.base, w2});
            }
        }
    }
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            int gi = plan.route[dim][id].first;
            if (gi < 0) throw SSetError("simplex not reachable from any generator");
            if (!(plan.generators[gi] == SimplexId{dim, id}))
                plan.derived[gi].push_back({dim, id});
        }
    return plan;
}

void enumerateMaps(const SSetPtr& X, const OutcomeSpace& Y, const GeneratorPlan& plan,
                   const std::function<std::vector<Outcome>(int, SimplexId)>& candidates,
                   const std::function<bool(SimplexId, const Outcome&)>& admits,
                   const std::function<void(const OutcomeMap&)>& emit, long cap) {
    const PresentedSSet& space = *X;
    OutcomeMap current(X, Y);
    std::vector<std::vector<bool>> known(space.maxDim() + 1);
    for (int dim = 0; dim <= space.maxDim(); ++dim) known[dim].assign(space.count(dim), false);
    long emitted = 0;

    // Face-consistency of a freshly set simplex against already-known ones.
    auto consistent = [&](SimplexId s) {
        if (s.dim >= 1) {
            for (int i = 0; i <= s.dim; ++i) {
                SimplexRef t = space.tableFace(s, i);
                if (!known[t.base.dim][t.base.id]) continue;
                if (Y.face(current.at(s), i) != current.eval(t)) return false;
            }
        }
        for (int dim = s.dim + 1; dim <= space.maxDim(); ++dim)
            for (int id = 0; id < space.count(dim); ++id) {
                if (!known[dim][id]) continue;
                for (int i = 0; i <= dim; ++i) {
                    SimplexRef t = space.tableFace({dim, id}, i);
                    if (!(t.base == s)) continue;
                    if (Y.face(current.at({dim, id}), i) != current.eval(t)) return false;
                }
            }
        return true;
    };

    std::function<bool(std::size_t)> recurse = [&](std::size_t gi) -> bool {
        if (gi == plan.generators.size()) {
            if (current.isValid()) {
                if (++emitted > cap) throw ResourceError("map enumeration exceeds the cap");
                emit(current);
            }
            return true;
        }
        SimplexId g = plan.generators[gi];
        for (const Outcome& theta : candidates(static_cast<int>(gi), g)) {
            if (!admits(g, theta)) continue;
            std::vector<SimplexId> placed;
            bool ok = true;
            current.set(g, theta);
            known[g.dim][g.id] = true;
            placed.push_back(g);
            if (!consistent(g)) ok = false;
            if (ok)
                for (const SimplexId& s : plan.derived[gi]) {
                    Outcome v = Y.apply(theta, plan.route[s.dim][s.id].second);
                    if (!admits(s, v)) {
                        ok = false;
                        break;
                    }
                    current.set(s, v);
                    known[s.dim][s.id] = true;
                    placed.push_back(s);
                    if (!consistent(s)) {
                        ok = false;
                        break;
                    }
                }
            if (ok) recurse(gi + 1);
            for (const SimplexId& s : placed) known[s.dim][s.id] = false;
        }
        return true;
    };
    recurse(0);
}

}  // namespace detail

std::vector<DeterministicAssignment> enumerateDeterministicGeneral(const SSetPtr& X,
                                                                   const OutcomeSpace& Y,
                                                                   long cap) {
    detail::GeneratorPlan plan = detail::planGenerators(*X);
    std::vector<DeterministicAssignment> out;
    detail::enumerateMaps(
        X, Y, plan,
        [&](int, SimplexId g) { return Y.simplices(g.dim); },
        [](SimplexId, const Outcome&) { return true; },
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

DeterministicAssignment restrictAssignment(const DeterministicAssignment& r, const SpaceMap& f) {
    const PresentedSSet& Z = f.source();
    DeterministicAssignment out;
    out.map = OutcomeMap(f.sourcePtr(), r.map.outcomes());
    for (int dim = 0; dim <= Z.maxDim(); ++dim)
        for (int id = 0; id < Z.count(dim); ++id) out.map.set({dim, id}, r.map.eval(f.at({dim, id})));
    if (r.map.outcomes().kind() == OutcomeSpace::Kind::Nerve) {
        out.edges.resize(Z.count(1));
        for (int id = 0; id < Z.count(1); ++id) out.edges[id] = out.map.at({1, id})[0];
    }
    return out;
}

DeterministicAssignment pushforwardAssignment(const DeterministicAssignment& r,
                                              const OutcomeSpace& W,
                                              const std::function<Outcome(const Outcome&)>& g) {
    const PresentedSSet& X = r.map.space();
    DeterministicAssignment out;
    out.map = OutcomeMap(r.map.spacePtr(), W);
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) out.map.set({dim, id}, g(r.map.at({dim, id})));
    if (W.kind() == OutcomeSpace::Kind::Nerve) {
        out.edges.resize(X.count(1));
        for (int id = 0; id < X.count(1); ++id) out.edges[id] = out.map.at({1, id})[0];
    }
    return out;
}

}  // namespace simpctx
