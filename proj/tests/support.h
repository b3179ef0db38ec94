// Shared test helpers: independent oracles (brute-force enumeration, a
// stand-alone tuple model for operator words) and exact random generators.
// Everything here must stay independent of the implementation paths it
// checks.
#pragma once

#include <map>
#include <random>
#include <vector>

#include "simpctx/contextuality.h"

namespace simpctx::testing {

// Brute force over all edge labelings, checking f(d1 s) = f(d2 s) + f(d0 s)
// directly through the face tables (degenerate faces contribute 0).
inline std::vector<std::vector<int>> bruteForceEdgeLabelings(
    const PresentedSSet& X, int d, const std::map<SimplexId, int>& constraints = {}) {
    std::vector<std::vector<int>> out;
    const int E = X.count(1);
    std::vector<int> f(E, 0);
    auto valueOf = [&](const SimplexRef& r) { return r.isDegenerate() ? 0 : f[r.base.id]; };
    while (true) {
        bool ok = true;
        for (int id = 0; id < X.count(2) && ok; ++id) {
            int lhs = valueOf(X.tableFace({2, id}, 1));
            int rhs = (valueOf(X.tableFace({2, id}, 0)) + valueOf(X.tableFace({2, id}, 2))) % d;
            ok = lhs == rhs;
        }
        for (const auto& [e, v] : constraints)
            if (f[e.id] != v) ok = false;
        if (ok) out.push_back(f);
        int k = 0;
        for (; k < E; ++k) {
            if (++f[k] < d) break;
            f[k] = 0;
        }
        if (k == E) break;
    }
    if (E == 0) {
        // The single empty labeling, kept when the (vacuous) constraints pass.
        out = {std::vector<int>{}};
    }
    return out;
}

// Independent model of simplicial operators: simplices of a standard simplex
// as weakly increasing vertex tuples, d_i deletes, s_j duplicates.
inline std::vector<int> applyFaceTuple(std::vector<int> t, int i) {
    t.erase(t.begin() + i);
    return t;
}
inline std::vector<int> applyDegTuple(std::vector<int> t, int j) {
    t.insert(t.begin() + j, t[j]);
    return t;
}
inline std::vector<int> applyWordTuple(const OperatorWord& w, std::vector<int> t) {
    std::vector<int> faces = w.facePart();
    while (!faces.empty()) {
        t = applyFaceTuple(std::move(t), faces.back());
        faces.pop_back();
    }
    const auto& degs = w.degeneracyPart();
    for (auto it = degs.rbegin(); it != degs.rend(); ++it) t = applyDegTuple(std::move(t), *it);
    return t;
}

inline OperatorWord randomWord(std::mt19937& rng, int max_index) {
    std::uniform_int_distribution<int> len(0, 2);
    std::uniform_int_distribution<int> idx(0, max_index);
    std::vector<int> faces, degen;
    int nf = len(rng), nd = len(rng);
    while (static_cast<int>(faces.size()) < nf) {
        int i = idx(rng);
        bool dup = false;
        for (int x : faces) dup = dup || x == i;
        if (!dup) faces.push_back(i);
    }
    std::sort(faces.begin(), faces.end());
    while (static_cast<int>(degen.size()) < nd) {
        int j = idx(rng);
        bool dup = false;
        for (int x : degen) dup = dup || x == j;
        if (!dup) degen.push_back(j);
    }
    std::sort(degen.rbegin(), degen.rend());
    return OperatorWord(degen, faces);
}

inline Rational randomRational(std::mt19937& rng, int den_bound = 64) {
    std::uniform_int_distribution<int> den(1, den_bound);
    int q = den(rng);
    std::uniform_int_distribution<int> num(0, q);
    return rat(num(rng), q);
}

// Nonsignaling boxes on CHSH-type spaces.  The per-context table P(i, j, a, b)
// gives the probability of outcomes (a, b) for the pair (x_i, y_j).
using BoxTable = std::function<Rational(int, int, int, int)>;

inline std::map<SimplexId, Distribution<Rational>> boxCells(const PresentedSSet& X,
                                                            const BoxTable& P) {
    auto cell = [&](int i, int j, bool y_first) {
        Distribution<Rational> dist;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Outcome theta = y_first ? Outcome{b, a} : Outcome{a, b};
                dist.add(theta, P(i, j, a, b));
            }
        return dist;
    };
    std::map<SimplexId, Distribution<Rational>> cells;
    if (X.find("sigma_y0x0")) {
        cells[X.byLabel("sigma_y0x0")] = cell(0, 0, true);
        cells[X.byLabel("sigma_y0x1")] = cell(1, 0, true);
        cells[X.byLabel("sigma_x0y1")] = cell(0, 1, false);
        cells[X.byLabel("sigma_x1y1")] = cell(1, 1, false);
    } else {
        cells[X.byLabel("012")] = cell(0, 0, false);
        cells[X.byLabel("013")] = cell(0, 1, false);
        cells[X.byLabel("0'12")] = cell(1, 0, false);
        cells[X.byLabel("0'13")] = cell(1, 1, false);
    }
    return cells;
}

inline SimplicialDistribution<Rational> boxDistribution(const SSetPtr& X, const BoxTable& P) {
    std::vector<std::string> report;
    auto p = assembleDistribution(X, OutcomeSpace::nerve(2), boxCells(*X, P), &report);
    if (!report.empty()) throw std::runtime_error("boxDistribution: " + report.front());
    auto bad = p.check();
    if (!bad.empty()) throw std::runtime_error("boxDistribution: box is signaling");
    return p;
}

// The PR-type boxes: a + b = i*j + alpha*i + beta*j + gamma (mod 2).
inline BoxTable prBoxTable(int alpha = 0, int beta = 0, int gamma = 0) {
    return [=](int i, int j, int a, int b) -> Rational {
        int target = (i * j + alpha * i + beta * j + gamma) % 2;
        return (a + b) % 2 == target ? rat(1, 2) : Rational(0);
    };
}

// Deterministic box of a quadruple (a0, b0, a1, b1).
inline BoxTable vertexBoxTable(int a0, int b0, int a1, int b1) {
    return [=](int i, int j, int a, int b) -> Rational {
        int av = i == 0 ? a0 : a1;
        int bv = j == 0 ? b0 : b1;
        return (a == av && b == bv) ? Rational(1) : Rational(0);
    };
}

// Random mixture of the 16 deterministic vertices and the 8 PR boxes with
// rational weights of denominator at most 64.  Hits both sides of the
// CHSH boundary.
inline BoxTable randomBoxTable(std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 8);
    std::vector<std::pair<BoxTable, int>> terms;
    int total = 0;
    for (int v = 0; v < 16; ++v) {
        int w = coin(rng) / 4;  // sparser vertices
        if (w > 0) {
            terms.push_back({vertexBoxTable(v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1), w});
            total += w;
        }
    }
    for (int k = 0; k < 8; ++k) {
        int w = coin(rng) / 3;
        if (w > 0) {
            terms.push_back({prBoxTable(k & 1, (k >> 1) & 1, (k >> 2) & 1), w});
            total += w;
        }
    }
    if (total == 0) return vertexBoxTable(0, 0, 0, 0);
    return [terms, total](int i, int j, int a, int b) -> Rational {
        Rational v(0);
        for (const auto& [table, w] : terms) v += Rational(w) * table(i, j, a, b);
        return Rational(v / total);
    };
}

}  // namespace simpctx::testing
