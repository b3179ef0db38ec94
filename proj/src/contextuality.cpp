#include "simpctx/contextuality.h"

#include <algorithm>

#include "simpctx/builtins.h"
#include <set>

namespace simpctx {

Rational SeparatingFunctional::valueAt(const SimplicialDistribution<Rational>& p) const {
    Rational v(0);
    for (std::size_t k = 0; k < cells.size(); ++k)
        v += coeff[k] * p.at(cells[k].first).at(cells[k].second);
    return v;
}

Rational SeparatingFunctional::valueAtAssignment(const DeterministicAssignment& r) const {
    Rational v(0);
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (r.map.at(cells[k].first) == cells[k].second) v += coeff[k];
    return v;
}

ContextualityVerdict isNoncontextual(const SimplicialDistribution<Rational>& p, long cap) {
    const PresentedSSet& X = p.space();
    const OutcomeSpace& Y = p.outcomes();
    std::vector<DeterministicAssignment> vertices =
        Y.kind() == OutcomeSpace::Kind::Nerve ? enumerateDeterministic(p.spacePtr(), Y, {}, cap)
                                              : enumerateDeterministicGeneral(p.spacePtr(), Y, cap);

    // Cells: every (simplex, outcome) pair of the space.
    std::vector<std::pair<SimplexId, Outcome>> cells;
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            for (const Outcome& theta : Y.simplices(dim)) cells.push_back({{dim, id}, theta});

    const int rows = static_cast<int>(cells.size()) + 1;
    const int cols = static_cast<int>(vertices.size());
    RationalMatrix A = RationalMatrix::Zero(rows, cols);
    RationalVector b = RationalVector::Zero(rows);
    for (int k = 0; k < rows - 1; ++k) {
        const auto& [s, theta] = cells[k];
        for (int r = 0; r < cols; ++r)
            if (vertices[r].map.at(s) == theta) A(k, r) = 1;
        b(k) = p.at(s).at(theta);
    }
    for (int r = 0; r < cols; ++r) A(rows - 1, r) = 1;
    b(rows - 1) = 1;

    StandardFeasibility lp = solveStandardFeasibility(A, b);
    ContextualityVerdict verdict;
    if (lp.feasible) {
        verdict.contextual = false;
        ClassicalDistribution<Rational> mix{p.spacePtr(), Y, {}};
        for (int r = 0; r < cols; ++r)
            if (lp.point(r) != 0) mix.add(vertices[r], lp.point(r));
        // Certificates must re-verify exactly.
        if (!mix.isNormalized()) throw std::logic_error("mixture weights do not normalize");
        SimplicialDistribution<Rational> reproduced = theta(mix);
        for (int dim = 0; dim <= X.maxDim(); ++dim)
            for (int id = 0; id < X.count(dim); ++id)
                if (!(reproduced.at({dim, id}) == p.at({dim, id})))
                    throw std::logic_error("mixture does not reproduce the distribution");
        verdict.mixture = std::move(mix);
        return verdict;
    }

    verdict.contextual = true;
    SeparatingFunctional f;
    f.cells = cells;
    f.coeff.resize(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) f.coeff[k] = lp.farkas(static_cast<int>(k));
    // Tight bound: the maximum over the deterministic vertices.
    bool first = true;
    for (const DeterministicAssignment& r : vertices) {
        Rational v = f.valueAtAssignment(r);
        if (first || v > f.bound) f.bound = v;
        first = false;
    }
    if (vertices.empty()) f.bound = 0;
    Rational at_p = f.valueAt(p);
    for (const DeterministicAssignment& r : vertices)
        if (f.valueAtAssignment(r) > f.bound)
            throw std::logic_error("separating functional fails on a vertex");
    if (at_p <= f.bound) throw std::logic_error("separating functional does not separate");
    verdict.functional = std::move(f);
    return verdict;
}

StrongContextualityReport isStronglyContextual(const SimplicialDistribution<Rational>& p,
                                               long cap) {
    StrongContextualityReport report;
    report.support = support(p, cap);
    report.strongly_contextual = report.support.empty();
    return report;
}

bool isLogicallyContextual(const SimplicialDistribution<Rational>& p, long cap) {
    // The support of the Boolean shadow equals the support of p, so the
    // Boolean distribution is classical iff every locally possible outcome
    // extends to a global support assignment.
    std::vector<DeterministicAssignment> S = support(p, cap);
    const PresentedSSet& X = p.space();
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            for (const auto& [theta, value] : p.at({dim, id}).support()) {
                bool covered = false;
                for (const DeterministicAssignment& s : S)
                    if (s.map.at({dim, id}) == theta) {
                        covered = true;
                        break;
                    }
                if (!covered) return true;
            }
    return false;
}

std::array<SimplexId, 4> chshEdges(const PresentedSSet& X) {
    const char* torus_names[4] = {"x0+y0", "x0+y1", "x1+y0", "x1+y1"};
    const char* square_names[4] = {"02", "03", "0'2", "0'3"};
    auto lookup = [&](const char* const names[4]) -> std::optional<std::array<SimplexId, 4>> {
        std::array<SimplexId, 4> out;
        for (int k = 0; k < 4; ++k) {
            auto s = X.find(names[k]);
            if (!s || s->dim != 1) return std::nullopt;
            out[k] = *s;
        }
        return out;
    };
    if (auto e = lookup(torus_names)) return *e;
    if (auto e = lookup(square_names)) return *e;
    throw SSetError("space carries no recognizable CHSH edges");
}

ChshReport chshCheck(const SimplicialDistribution<Rational>& p) {
    return chshCheck(p, chshEdges(p.space()));
}

ChshReport chshCheck(const SimplicialDistribution<Rational>& p,
                     const std::array<SimplexId, 4>& edges) {
    ChshReport report;
    for (int k = 0; k < 4; ++k) report.edge_p0[k] = p.at(edges[k]).at({0});
    const auto& q = report.edge_p0;
    report.sums[0] = q[0] + q[1] + q[2] - q[3];
    report.sums[1] = q[0] + q[1] - q[2] + q[3];
    report.sums[2] = q[0] - q[1] + q[2] + q[3];
    report.sums[3] = -q[0] + q[1] + q[2] + q[3];
    report.all_satisfied = true;
    report.max_value = report.sums[0];
    for (int k = 0; k < 4; ++k) {
        report.satisfied[k] = report.sums[k] >= 0 && report.sums[k] <= 2;
        report.all_satisfied = report.all_satisfied && report.satisfied[k];
        if (report.sums[k] > report.max_value) report.max_value = report.sums[k];
    }
    return report;
}

SpaceMap inclusionByLabels(const SSetPtr& X, const SSetPtr& W) {
    SpaceMap f(X, W);
    // Positive-dimensional simplices are matched by label; vertex images are
    // then forced by the edges (identifications in the target may merge
    // vertices, so vertex labels need not correspond).
    for (int dim = 1; dim <= X->maxDim(); ++dim)
        for (int id = 0; id < X->count(dim); ++id) {
            SimplexId target = W->byLabel(X->label({dim, id}));
            if (target.dim != dim)
                throw SSetError("label '" + X->label({dim, id}) + "' changes dimension");
            f.set({dim, id}, SimplexRef(target));
        }
    std::vector<std::optional<SimplexRef>> vertex_img(X->count(0));
    auto put = [&](SimplexId v, const SimplexRef& img) {
        if (vertex_img[v.id] && !(*vertex_img[v.id] == img))
            throw SSetError("label-matched map gives inconsistent vertex images");
        vertex_img[v.id] = img;
    };
    for (int id = 0; id < X->count(1); ++id) {
        const SimplexRef& img = f.at({1, id});
        put(X->tableFace({1, id}, 0).base, W->face(img, 0));
        put(X->tableFace({1, id}, 1).base, W->face(img, 1));
    }
    for (int id = 0; id < X->count(0); ++id) {
        if (!vertex_img[id]) {
            // Isolated vertex: fall back to its label.
            vertex_img[id] = SimplexRef(W->byLabel(X->label({0, id})));
        }
        f.set({0, id}, *vertex_img[id]);
    }
    auto violations = f.check();
    if (!violations.empty()) throw SSetError("label-matched map is not simplicial");
    return f;
}

ExtensionResult solveExtension(const SimplicialDistribution<Rational>& p, const SpaceMap& f) {
    const PresentedSSet& X = f.target();
    const OutcomeSpace& Y = p.outcomes();
    const SSetPtr& Xp = f.targetPtr();

    // Known cells come from p through the inclusion.
    std::vector<std::vector<const Distribution<Rational>*>> known(X.maxDim() + 1);
    for (int dim = 0; dim <= X.maxDim(); ++dim) known[dim].assign(X.count(dim), nullptr);
    for (int dim = 0; dim <= f.source().maxDim(); ++dim)
        for (int id = 0; id < f.source().count(dim); ++id) {
            const SimplexRef& img = f.at({dim, id});
            if (img.isDegenerate()) throw SSetError("solveExtension: inclusion must be nondegenerate");
            const Distribution<Rational>* cell = &p.at({dim, id});
            const Distribution<Rational>* prev = known[img.base.dim][img.base.id];
            if (prev && !(*prev == *cell))
                throw SSetError("solveExtension: distribution does not factor through the map");
            known[img.base.dim][img.base.id] = cell;
        }

    // Unknown variables: cells of the remaining simplices.
    struct Var {
        SimplexId s;
        Outcome theta;
    };
    std::vector<Var> vars;
    std::map<SimplexId, int> firstVar;
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            if (known[dim][id]) continue;
            if (dim == 0 && Y.kind() != OutcomeSpace::Kind::DiscretePower) continue;
            firstVar[{dim, id}] = static_cast<int>(vars.size());
            for (const Outcome& theta : Y.simplices(dim)) vars.push_back({{dim, id}, theta});
        }

    // Value of a cell as (constant, coefficient map over vars).
    auto cellTerm = [&](SimplexId s, const Outcome& theta) {
        std::pair<Rational, std::map<int, Rational>> term{Rational(0), {}};
        if (known[s.dim][s.id]) {
            term.first = known[s.dim][s.id]->at(theta);
        } else if (s.dim == 0 && Y.kind() != OutcomeSpace::Kind::DiscretePower) {
            term.first = theta.empty() ? Rational(1) : Rational(0);
        } else {
            int base = firstVar.at(s);
            const auto sims = Y.simplices(s.dim);
            for (int k = 0; k < static_cast<int>(sims.size()); ++k)
                if (sims[k] == theta) term.second[base + k] = 1;
        }
        return term;
    };

    std::vector<RationalVector> rows;
    std::vector<Rational> rhs;
    std::vector<std::string> labels;
    auto addRow = [&](std::map<int, Rational> coeffs, Rational constant, std::string label) {
        RationalVector row = RationalVector::Zero(static_cast<int>(vars.size()));
        for (const auto& [k, c] : coeffs) row(k) = c;
        rows.push_back(std::move(row));
        rhs.push_back(std::move(constant));
        labels.push_back(std::move(label));
    };

    // Normalization of each unknown simplex.
    for (const auto& [s, base] : firstVar) {
        std::map<int, Rational> coeffs;
        const auto sims = Y.simplices(s.dim);
        for (int k = 0; k < static_cast<int>(sims.size()); ++k) coeffs[base + k] = 1;
        addRow(std::move(coeffs), 1, "normalization of " + X.label(s));
    }

    // Face compatibility on every nondegenerate simplex of X touching an
    // unknown cell.
    for (int dim = 1; dim <= X.maxDim(); ++dim) {
        for (int id = 0; id < X.count(dim); ++id) {
            SimplexId s{dim, id};
            for (int i = 0; i <= dim; ++i) {
                SimplexRef t = X.tableFace(s, i);
                bool involves_unknown = !known[dim][id] || !known[t.base.dim][t.base.id];
                if (!involves_unknown) continue;
                for (const Outcome& target : Y.simplices(dim - 1)) {
                    std::map<int, Rational> coeffs;
                    Rational constant(0);
                    // Marginal side: sum of cells of s mapping onto target.
                    for (const Outcome& theta : Y.simplices(dim)) {
                        if (Y.face(theta, i) != target) continue;
                        auto term = cellTerm(s, theta);
                        constant += term.first;
                        for (const auto& [k, c] : term.second) coeffs[k] += c;
                    }
                    // Target side: the (possibly degenerate) face cell.
                    Outcome pre = target;
                    bool in_image = true;
                    if (t.isDegenerate()) {
                        for (int j : t.degeneracies) pre = Y.face(pre, j);
                        in_image =
                            Y.apply(pre, OperatorWord::degeneracies(t.degeneracies)) == target;
                    }
                    if (in_image) {
                        auto term = cellTerm(t.base, pre);
                        constant -= term.first;
                        for (const auto& [k, c] : term.second) coeffs[k] -= c;
                    }
                    addRow(std::move(coeffs), -constant,
                           "d" + std::to_string(i) + " of " + X.label(s) + " at " +
                               formatOutcome(target));
                }
            }
        }
    }

    RationalMatrix A = RationalMatrix::Zero(static_cast<int>(rows.size()),
                                            static_cast<int>(vars.size()));
    RationalVector b(static_cast<int>(rows.size()));
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        A.row(r) = rows[r].transpose();
        b(r) = rhs[r];
    }

    ExtensionResult result;
    result.row_labels = labels;
    StandardFeasibility lp = solveStandardFeasibility(A, b);
    if (!lp.feasible) {
        result.feasible = false;
        result.farkas = lp.farkas;
        return result;
    }
    result.feasible = true;
    SimplicialDistribution<Rational> ext(Xp, Y);
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            if (known[dim][id]) ext.set({dim, id}, *known[dim][id]);
    for (const auto& [s, base] : firstVar) {
        Distribution<Rational> cell;
        const auto sims = Y.simplices(s.dim);
        for (int k = 0; k < static_cast<int>(sims.size()); ++k)
            cell.add(sims[k], lp.point(base + k));
        ext.set(s, std::move(cell));
    }
    if (!ext.isValid()) throw std::logic_error("solveExtension produced an invalid extension");
    result.extension = std::move(ext);
    return result;
}

Distribution<Rational> minExtensionDelta3(const SimplicialDistribution<Rational>& p) {
    const PresentedSSet& X = p.space();
    // Facet order (123, 023, 013, 012) by label.
    auto cell = [&](const char* label) { return p.at(X.byLabel(label)); };
    Distribution<Rational> p123 = cell("123"), p023 = cell("023"), p013 = cell("013"),
                           p012 = cell("012");
    Rational m = p123.at({0, 0});
    for (const Distribution<Rational>* q : {&p023, &p013, &p012})
        if (q->at({0, 0}) < m) m = q->at({0, 0});

    Distribution<Rational> out;
    auto put = [&](std::initializer_list<int> theta, const Rational& v) {
        out.add(Outcome(theta), v);
    };
    put({0, 0, 0}, m);
    put({1, 0, 0}, p123.at({0, 0}) - m);
    put({1, 1, 0}, p023.at({0, 0}) - m);
    put({0, 1, 1}, p013.at({0, 0}) - m);
    put({0, 0, 1}, p012.at({0, 0}) - m);
    put({1, 0, 1}, p123.at({0, 1}) - (p012.at({0, 0}) - m));
    put({0, 1, 0}, p123.at({1, 0}) - (p023.at({0, 0}) - m));
    put({1, 1, 1}, p123.at({1, 1}) - (p013.at({0, 0}) - m));
    return out;
}

HullDescription classicalFacets(const SSetPtr& X, const OutcomeSpace& Y,
                                const std::vector<CellCoordinate>& coords, long cap) {
    std::vector<DeterministicAssignment> vertices =
        Y.kind() == OutcomeSpace::Kind::Nerve ? enumerateDeterministic(X, Y, {}, cap)
                                              : enumerateDeterministicGeneral(X, Y, cap);
    std::set<std::vector<int>> distinct;
    std::vector<RationalVector> points;
    for (const DeterministicAssignment& r : vertices) {
        std::vector<int> key;
        RationalVector v(static_cast<int>(coords.size()));
        for (std::size_t k = 0; k < coords.size(); ++k) {
            int hit = r.map.at(coords[k].simplex) == coords[k].outcome ? 1 : 0;
            key.push_back(hit);
            v(static_cast<int>(k)) = hit;
        }
        if (distinct.insert(key).second) points.push_back(std::move(v));
    }
    if (static_cast<int>(points.size()) <= 64) return hullFacets(points);

    // Fourier-Motzkin fallback: eliminate the mixture weights from
    // x = V' lambda, sum lambda = 1, lambda >= 0.
    const int n = static_cast<int>(coords.size());
    const int m = static_cast<int>(points.size());
    LinearSystem sys;
    sys.A.resize(0, n + m);
    RationalVector row(n + m);
    for (int k = 0; k < n; ++k) {
        row.setZero();
        row(k) = 1;
        for (int r = 0; r < m; ++r) row(n + r) = -points[r](k);
        sys.addRow(row, Rel::Eq, Rational(0));
    }
    row.setZero();
    for (int r = 0; r < m; ++r) row(n + r) = 1;
    sys.addRow(row, Rel::Eq, Rational(1));
    for (int r = 0; r < m; ++r) {
        row.setZero();
        row(n + r) = -1;
        sys.addRow(row, Rel::Le, Rational(0));
    }
    LinearSystem projected = sys;
    for (int r = m - 1; r >= 0; --r) projected = fourierMotzkin(projected, n + r);
    projected = removeRedundant(projected);
    HullDescription out;
    out.dimension = n;
    for (int r = 0; r < projected.rows(); ++r) {
        Facet f;
        f.a = projected.A.row(r).head(n).transpose();
        f.b = projected.b(r);
        out.facets.push_back(f);
    }
    return out;
}

DiscreteEmbedding discreteEmbed(const DiscreteScenario& sc) {
    const int M = static_cast<int>(sc.measurements.size());
    if (sc.d < 2) throw SSetError("discreteEmbed: d must be at least 2");
    std::vector<bool> covered(M, false);
    for (const auto& C : sc.contexts) {
        if (C.empty()) throw SSetError("discreteEmbed: empty context");
        for (std::size_t k = 0; k < C.size(); ++k) {
            if (C[k] < 0 || C[k] >= M) throw SSetError("discreteEmbed: measurement out of range");
            if (k + 1 < C.size() && C[k] >= C[k + 1])
                throw SSetError("discreteEmbed: contexts must be strictly increasing");
            covered[C[k]] = true;
        }
    }
    for (int k = 0; k < M; ++k)
        if (!covered[k]) throw SSetError("discreteEmbed: contexts do not cover the measurements");
    for (const auto& C : sc.contexts)
        for (const auto& C2 : sc.contexts) {
            if (&C == &C2 || C.size() > C2.size()) continue;
            if (std::includes(C2.begin(), C2.end(), C.begin(), C.end()) && C != C2)
                throw SSetError("discreteEmbed: contexts must form an antichain");
        }
    DiscreteEmbedding emb;
    emb.space = complexSpace(sc.measurements, sc.contexts);
    emb.outcomes = OutcomeSpace::discretePower(sc.d);
    emb.contexts = sc.contexts;
    return emb;
}

SimplicialDistribution<Rational> tableToDistribution(
    const DiscreteEmbedding& emb, const std::vector<Distribution<Rational>>& tables) {
    if (tables.size() != emb.contexts.size())
        throw DistributionError("tableToDistribution: one table per context required");
    std::map<SimplexId, Distribution<Rational>> given;
    for (std::size_t c = 0; c < emb.contexts.size(); ++c) {
        std::string label;
        for (int v : emb.contexts[c]) label += emb.space->label({0, v});
        given[emb.space->byLabel(label)] = tables[c];
    }
    std::vector<std::string> report;
    SimplicialDistribution<Rational> p = assembleDistribution(emb.space, emb.outcomes, given, &report);
    if (!report.empty())
        throw DistributionError("tableToDistribution: " + report.front());
    auto violations = p.check();
    if (!violations.empty())
        throw DistributionError("tableToDistribution: tables violate nonsignaling at " +
                                emb.space->label(violations.front().simplex));
    return p;
}

std::vector<Distribution<Rational>> distributionToTable(const DiscreteEmbedding& emb,
                                                        const SimplicialDistribution<Rational>& p) {
    std::vector<Distribution<Rational>> out;
    for (const auto& C : emb.contexts) {
        std::string label;
        for (int v : C) label += emb.space->label({0, v});
        out.push_back(p.at(emb.space->byLabel(label)));
    }
    return out;
}

}  // namespace simpctx
