#include "simpctx/builtins.h"

#include <algorithm>
#include <map>
#include <set>

namespace simpctx {

namespace {

// Copies a built space back into a builder so labels and named subspaces can
// be attached after gluing.
PresentedSSet::Builder copyToBuilder(const PresentedSSet& X) {
    PresentedSSet::Builder b(X.maxDim());
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) b.add(dim, X.label({dim, id}));
    for (int dim = 1; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            for (int i = 0; i <= dim; ++i) b.setFace({dim, id}, i, X.tableFace({dim, id}, i));
    for (const auto& [name, gens] : X.namedSubspaces()) b.nameSubspace(name, gens);
    return b;
}

SSetPtr deltaSpace(int n) {
    if (n < 0) throw SSetError("delta: dimension must be nonnegative");
    std::vector<std::string> verts;
    for (int v = 0; v <= n; ++v) verts.push_back(std::to_string(v));
    std::vector<int> top(n + 1);
    for (int v = 0; v <= n; ++v) top[v] = v;
    auto X = complexSpace(verts, {top});
    auto b = copyToBuilder(*X);
    if (n >= 1) {
        std::vector<SimplexId> bd;
        for (int id = 0; id < X->count(n - 1); ++id) bd.push_back({n - 1, id});
        b.nameSubspace("boundary", bd);
    }
    return b.buildPtr();
}

SSetPtr boundaryDeltaSpace(int n) {
    if (n < 1) throw SSetError("boundary_delta: dimension must be at least 1");
    std::vector<std::string> verts;
    for (int v = 0; v <= n; ++v) verts.push_back(std::to_string(v));
    std::vector<std::vector<int>> facets;
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(f);
    }
    return complexSpace(verts, facets);
}

SSetPtr hornSpace(int n, int k) {
    if (n < 1 || k < 0 || k > n) throw SSetError("horn: need 0 <= k <= n, n >= 1");
    std::vector<std::vector<int>> facets;
    std::vector<bool> used(n + 1, false);
    for (int skip = 0; skip <= n; ++skip) {
        if (skip == k) continue;
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) {
                f.push_back(v);
                used[v] = true;
            }
        facets.push_back(f);
    }
    // For n = 1 the horn is a single vertex; drop the unused one.
    std::vector<std::string> verts;
    std::vector<int> remap(n + 1, -1);
    for (int v = 0; v <= n; ++v)
        if (used[v]) {
            remap[v] = static_cast<int>(verts.size());
            verts.push_back(std::to_string(v));
        }
    for (auto& f : facets)
        for (int& v : f) v = remap[v];
    return complexSpace(verts, facets);
}

SSetPtr circleSpace() {
    PresentedSSet::Builder b(1);
    SimplexId v = b.add(0, "pt");
    SimplexId e = b.add(1, "loop");
    b.setFace(e, 0, SimplexRef(v));
    b.setFace(e, 1, SimplexRef(v));
    return b.buildPtr();
}

SSetPtr gluedTriangleSpace() {
    auto d2 = deltaSpace(2);
    SimplexId sigma = d2->byLabel("012");
    auto glued = glue(d2, {{d2->tableFace(sigma, 0), d2->tableFace(sigma, 1)}});
    auto b = copyToBuilder(*glued.space);
    SimplexId s2 = glued.projection.at(sigma).base;
    b.relabel(s2, "sigma");
    b.relabel(glued.projection.eval(d2->tableFace(sigma, 0)).base, "e");
    b.relabel(glued.projection.eval(d2->tableFace(sigma, 2)).base, "x");
    return b.buildPtr();
}

// Four triangles carrying ordered measurement pairs, glued along the shared
// measurement edges; the d1 edges form the XOR boundary.
struct ChshParts {
    SSetPtr space;
    SimplexId t[4];  // sigma_y0x0, sigma_y0x1, sigma_x0y1, sigma_x1y1
};

ChshParts chshTriangles() {
    PresentedSSet::Builder b(2);
    SimplexId tri[4];
    for (int k = 0; k < 4; ++k) {
        SimplexId v0 = b.add(0), v1 = b.add(0), v2 = b.add(0);
        SimplexId e01 = b.add(1), e12 = b.add(1), e02 = b.add(1);
        b.setFace(e01, 0, SimplexRef(v1));
        b.setFace(e01, 1, SimplexRef(v0));
        b.setFace(e12, 0, SimplexRef(v2));
        b.setFace(e12, 1, SimplexRef(v1));
        b.setFace(e02, 0, SimplexRef(v2));
        b.setFace(e02, 1, SimplexRef(v0));
        tri[k] = b.add(2);
        b.setFace(tri[k], 0, SimplexRef(e12));
        b.setFace(tri[k], 1, SimplexRef(e02));
        b.setFace(tri[k], 2, SimplexRef(e01));
    }
    auto base = b.buildPtr();
    auto glued = glue(base, {
                                {base->tableFace(tri[0], 0), base->tableFace(tri[2], 2)},  // x0
                                {base->tableFace(tri[1], 0), base->tableFace(tri[3], 2)},  // x1
                                {base->tableFace(tri[0], 2), base->tableFace(tri[1], 2)},  // y0
                                {base->tableFace(tri[2], 0), base->tableFace(tri[3], 0)},  // y1
                            });
    ChshParts parts;
    parts.space = glued.space;
    for (int k = 0; k < 4; ++k) parts.t[k] = glued.projection.at(tri[k]).base;
    return parts;
}

PresentedSSet::Builder labelChsh(const ChshParts& parts) {
    const PresentedSSet& X = *parts.space;
    auto b = copyToBuilder(X);
    const char* tri_names[4] = {"sigma_y0x0", "sigma_y0x1", "sigma_x0y1", "sigma_x1y1"};
    for (int k = 0; k < 4; ++k) b.relabel(parts.t[k], tri_names[k]);
    b.relabel(X.tableFace(parts.t[0], 0).base, "x0");
    b.relabel(X.tableFace(parts.t[1], 0).base, "x1");
    b.relabel(X.tableFace(parts.t[0], 2).base, "y0");
    b.relabel(X.tableFace(parts.t[2], 0).base, "y1");
    b.relabel(X.tableFace(parts.t[0], 1).base, "x0+y0");
    b.relabel(X.tableFace(parts.t[1], 1).base, "x1+y0");
    b.relabel(X.tableFace(parts.t[2], 1).base, "x0+y1");
    b.relabel(X.tableFace(parts.t[3], 1).base, "x1+y1");
    int vid = 0;
    for (int id = 0; id < X.count(0); ++id) b.relabel({0, id}, "v" + std::to_string(vid++));
    return b;
}

SSetPtr puncturedTorusSpace() {
    ChshParts parts = chshTriangles();
    auto b = labelChsh(parts);
    const PresentedSSet& X = *parts.space;
    b.nameSubspace("boundary", {X.tableFace(parts.t[0], 1).base, X.tableFace(parts.t[1], 1).base,
                                X.tableFace(parts.t[2], 1).base, X.tableFace(parts.t[3], 1).base});
    return b.buildPtr();
}

// Attaches the middle diamond (contexts (x0+y0, x1+y1) and (x1+y0, x0+y1))
// to the four CHSH triangles; with both triangles present the result is the
// torus, with only the second it is the state-dependent Mermin square space.
SSetPtr merminFamily(bool with_plus, bool with_minus, bool refine_plus) {
    PresentedSSet::Builder b(2);
    SimplexId tri[4];
    std::vector<SimplexId> extra;
    for (int k = 0; k < 4; ++k) {
        SimplexId v0 = b.add(0), v1 = b.add(0), v2 = b.add(0);
        SimplexId e01 = b.add(1), e12 = b.add(1), e02 = b.add(1);
        b.setFace(e01, 0, SimplexRef(v1));
        b.setFace(e01, 1, SimplexRef(v0));
        b.setFace(e12, 0, SimplexRef(v2));
        b.setFace(e12, 1, SimplexRef(v1));
        b.setFace(e02, 0, SimplexRef(v2));
        b.setFace(e02, 1, SimplexRef(v0));
        tri[k] = b.add(2);
        b.setFace(tri[k], 0, SimplexRef(e12));
        b.setFace(tri[k], 1, SimplexRef(e02));
        b.setFace(tri[k], 2, SimplexRef(e01));
    }
    int n_extra = (with_plus ? 1 : 0) + (with_minus ? 1 : 0) + (refine_plus ? 2 : 0);
    for (int k = 0; k < n_extra; ++k) {
        SimplexId v0 = b.add(0), v1 = b.add(0), v2 = b.add(0);
        SimplexId e01 = b.add(1), e12 = b.add(1), e02 = b.add(1);
        b.setFace(e01, 0, SimplexRef(v1));
        b.setFace(e01, 1, SimplexRef(v0));
        b.setFace(e12, 0, SimplexRef(v2));
        b.setFace(e12, 1, SimplexRef(v1));
        b.setFace(e02, 0, SimplexRef(v2));
        b.setFace(e02, 1, SimplexRef(v0));
        SimplexId t = b.add(2);
        b.setFace(t, 0, SimplexRef(e12));
        b.setFace(t, 1, SimplexRef(e02));
        b.setFace(t, 2, SimplexRef(e01));
        extra.push_back(t);
    }
    auto base = b.buildPtr();
    std::vector<std::pair<SimplexRef, SimplexRef>> pairs = {
        {base->tableFace(tri[0], 0), base->tableFace(tri[2], 2)},
        {base->tableFace(tri[1], 0), base->tableFace(tri[3], 2)},
        {base->tableFace(tri[0], 2), base->tableFace(tri[1], 2)},
        {base->tableFace(tri[2], 0), base->tableFace(tri[3], 0)},
    };
    std::size_t at = 0;
    SimplexId plus{}, minus{}, ta{}, tb{};
    if (with_plus) {
        plus = extra[at++];
        pairs.push_back({base->tableFace(plus, 2), base->tableFace(tri[0], 1)});
        pairs.push_back({base->tableFace(plus, 0), base->tableFace(tri[3], 1)});
    }
    if (with_minus) {
        minus = extra[at++];
        pairs.push_back({base->tableFace(minus, 2), base->tableFace(tri[1], 1)});
        pairs.push_back({base->tableFace(minus, 0), base->tableFace(tri[2], 1)});
    }
    if (refine_plus) {
        ta = extra[at++];
        tb = extra[at++];
        pairs.push_back({base->tableFace(ta, 2), base->tableFace(tri[0], 1)});
        pairs.push_back({base->tableFace(ta, 0), base->tableFace(tri[3], 1)});
        pairs.push_back({base->tableFace(tb, 2), base->tableFace(ta, 1)});
        pairs.push_back({base->tableFace(tb, 1), base->tableFace(minus, 1)});
    }
    if (with_plus && with_minus)
        pairs.push_back({base->tableFace(plus, 1), base->tableFace(minus, 1)});

    auto glued = glue(base, pairs);
    const PresentedSSet& X = *glued.space;
    ChshParts parts;
    parts.space = glued.space;
    for (int k = 0; k < 4; ++k) parts.t[k] = glued.projection.at(tri[k]).base;
    auto lb = labelChsh(parts);

    if (with_minus) {
        SimplexId m = glued.projection.at(minus).base;
        lb.relabel(m, "sigma_minus");
        lb.relabel(X.tableFace(m, 1).base, "diag");
    }
    if (with_plus) {
        SimplexId p = glued.projection.at(plus).base;
        lb.relabel(p, "sigma_plus");
    }
    if (refine_plus) {
        SimplexId a = glued.projection.at(ta).base;
        SimplexId t = glued.projection.at(tb).base;
        lb.relabel(a, "sigma_a");
        lb.relabel(t, "sigma_b");
        lb.relabel(X.tableFace(a, 1).base, "w");
        lb.relabel(X.tableFace(t, 0).base, "loop");
        lb.nameSubspace("loop", {X.tableFace(t, 0).base});
    }
    if (with_minus && !with_plus && !refine_plus) {
        SimplexId m = glued.projection.at(minus).base;
        lb.nameSubspace("boundary", {X.tableFace(parts.t[0], 1).base,
                                     X.tableFace(parts.t[3], 1).base, X.tableFace(m, 1).base});
    }
    return lb.buildPtr();
}

SSetPtr diamondSpace(int face_a, int face_b) {
    if (face_a < 0 || face_a > 2 || face_b < 0 || face_b > 2)
        throw SSetError("diamond: glued faces must be 0, 1 or 2");
    auto d2 = deltaSpace(2);
    DisjointUnion uni = disjointUnion(*d2, *d2);
    SimplexId t0{2, 0}, t1{2, uni.offsetB[2]};
    auto reindex = [&](SimplexRef r) {
        return SimplexRef(r.degeneracies, {r.base.dim, r.base.id + uni.offsetB[r.base.dim]});
    };
    auto glued = glue(uni.space, {{uni.space->tableFace(t0, face_a),
                                   reindex(d2->tableFace({2, 0}, face_b))}});
    const PresentedSSet& X = *glued.space;
    auto b = copyToBuilder(X);
    SimplexId s0 = glued.projection.at(t0).base;
    SimplexId s1 = glued.projection.at(t1).base;
    b.relabel(s0, "sigma_x0y0");
    b.relabel(s1, "sigma_x1y1");
    b.relabel(glued.projection.eval(uni.space->tableFace(t0, face_a)).base, "shared");
    const char* first_names[3] = {"y0", "x0+y0", "x0"};
    const char* second_names[3] = {"y1", "x1+y1", "x1"};
    std::vector<SimplexId> boundary;
    for (int i = 0; i <= 2; ++i) {
        if (i != face_a) {
            SimplexId e = X.tableFace(s0, i).base;
            b.relabel(e, first_names[i]);
            boundary.push_back(e);
        }
        if (i != face_b) {
            SimplexId e = X.tableFace(s1, i).base;
            b.relabel(e, second_names[i]);
            boundary.push_back(e);
        }
    }
    int vid = 0;
    for (int id = 0; id < X.count(0); ++id) b.relabel({0, id}, "v" + std::to_string(vid++));
    b.nameSubspace("boundary", boundary);
    return b.buildPtr();
}

SSetPtr squareFamily(const char* which) {
    // Vertex order matters for the spine structure: 0 and 0' come first so
    // that the x measurements sit on the 01-type edges.
    std::vector<std::string> verts = {"0", "0'", "1", "2", "3"};
    std::vector<std::vector<int>> facets;
    std::string w(which);
    if (w == "H" || w == "Q") {
        facets.push_back({0, 2, 4});  // 013
        facets.push_back({0, 2, 3});  // 012
        facets.push_back({1, 2, 4});  // 0'13
        facets.push_back({1, 2, 3});  // 0'12
    }
    if (w == "H" || w == "A") {
        facets.push_back({2, 3, 4});  // 123
        facets.push_back({0, 3, 4});  // 023
        facets.push_back({1, 3, 4});  // 0'23
    }
    auto X = complexSpace(verts, facets);
    auto b = copyToBuilder(*X);
    if (w == "Q" || w == "H") {
        std::vector<SimplexId> boundary = {X->byLabel("02"), X->byLabel("03"), X->byLabel("0'2"),
                                           X->byLabel("0'3")};
        b.nameSubspace(w == "Q" ? "boundary" : "boundary_Q", boundary);
    }
    if (w == "H") {
        b.nameSubspace("Q", {X->byLabel("013"), X->byLabel("012"), X->byLabel("0'13"),
                             X->byLabel("0'12")});
        b.nameSubspace("A", {X->byLabel("123"), X->byLabel("023"), X->byLabel("0'23")});
    }
    if (w == "A") {
        std::vector<SimplexId> boundary;
        for (const char* lbl : {"12", "13", "02", "03", "0'2", "0'3"})
            boundary.push_back(X->byLabel(lbl));
        b.nameSubspace("boundary", boundary);
    }
    return b.buildPtr();
}

SSetPtr twoSimplicesGlued(int d, int n) {
    if (d < 1 || n < 0 || n > d) throw SSetError("Z(d,n): need 0 <= n <= d");
    std::vector<std::string> verts;
    for (int v = 0; v <= n; ++v) verts.push_back(std::to_string(v));
    for (int v = n + 1; v <= d; ++v) verts.push_back("a" + std::to_string(v));
    for (int v = n + 1; v <= d; ++v) verts.push_back("b" + std::to_string(v));
    std::vector<int> f1, f2;
    for (int v = 0; v <= n; ++v) {
        f1.push_back(v);
        f2.push_back(v);
    }
    for (int v = 0; v < d - n; ++v) {
        f1.push_back(n + 1 + v);
        f2.push_back(n + 1 + (d - n) + v);
    }
    return complexSpace(verts, {f1, f2});
}

}  // namespace

SSetPtr complexSpace(const std::vector<std::string>& vertex_labels,
                     const std::vector<std::vector<int>>& facets) {
    int max_dim = 0;
    for (const auto& f : facets) {
        if (f.empty()) throw SSetError("complexSpace: empty facet");
        for (std::size_t k = 0; k + 1 < f.size(); ++k)
            if (f[k] >= f[k + 1]) throw SSetError("complexSpace: facet not strictly increasing");
        if (f.back() >= static_cast<int>(vertex_labels.size()) || f.front() < 0)
            throw SSetError("complexSpace: vertex index out of range");
        max_dim = std::max(max_dim, static_cast<int>(f.size()) - 1);
    }
    // Collect every subsimplex.
    std::vector<std::set<std::vector<int>>> cells(max_dim + 1);
    for (int v = 0; v < static_cast<int>(vertex_labels.size()); ++v) cells[0].insert({v});
    for (const auto& f : facets) {
        int n = static_cast<int>(f.size()) - 1;
        for (int mask = 1; mask < (1 << (n + 1)); ++mask) {
            std::vector<int> sub;
            for (int k = 0; k <= n; ++k)
                if (mask & (1 << k)) sub.push_back(f[k]);
            cells[sub.size() - 1].insert(sub);
        }
    }
    PresentedSSet::Builder b(max_dim);
    std::map<std::vector<int>, SimplexId> index;
    for (int dim = 0; dim <= max_dim; ++dim) {
        for (const auto& tuple : cells[dim]) {
            std::string label;
            for (int v : tuple) label += vertex_labels[v];
            index[tuple] = b.add(dim, label);
        }
    }
    for (int dim = 1; dim <= max_dim; ++dim) {
        for (const auto& tuple : cells[dim]) {
            for (int i = 0; i <= dim; ++i) {
                std::vector<int> sub;
                for (int k = 0; k <= dim; ++k)
                    if (k != i) sub.push_back(tuple[k]);
                b.setFace(index[tuple], i, SimplexRef(index[sub]));
            }
        }
    }
    return b.buildPtr();
}

DisjointUnion disjointUnion(const PresentedSSet& A, const PresentedSSet& B) {
    int max_dim = std::max(A.maxDim(), B.maxDim());
    PresentedSSet::Builder b(max_dim);
    for (int dim = 0; dim <= A.maxDim(); ++dim)
        for (int id = 0; id < A.count(dim); ++id) b.add(dim, A.label({dim, id}));
    std::vector<int> offset(max_dim + 1, 0);
    for (int dim = 0; dim <= max_dim; ++dim) offset[dim] = A.count(dim);
    for (int dim = 0; dim <= B.maxDim(); ++dim)
        for (int id = 0; id < B.count(dim); ++id) b.add(dim, B.label({dim, id}));
    for (int dim = 1; dim <= A.maxDim(); ++dim)
        for (int id = 0; id < A.count(dim); ++id)
            for (int i = 0; i <= dim; ++i) b.setFace({dim, id}, i, A.tableFace({dim, id}, i));
    for (int dim = 1; dim <= B.maxDim(); ++dim)
        for (int id = 0; id < B.count(dim); ++id)
            for (int i = 0; i <= dim; ++i) {
                SimplexRef t = B.tableFace({dim, id}, i);
                b.setFace({dim, id + offset[dim]}, i,
                          SimplexRef(t.degeneracies,
                                     {t.base.dim, t.base.id + offset[t.base.dim]}));
            }
    return {b.buildPtr(), offset};
}

SSetPtr builtinSpace(const std::string& name, const std::vector<int>& params) {
    auto arg = [&](std::size_t k) {
        if (k >= params.size()) throw SSetError("builtin '" + name + "' is missing a parameter");
        return params[k];
    };
    if (name == "delta") return deltaSpace(arg(0));
    if (name == "boundary_delta") return boundaryDeltaSpace(arg(0));
    if (name == "horn") return hornSpace(arg(0), arg(1));
    if (name == "circle") return circleSpace();
    if (name == "diamond")
        return params.empty() ? diamondSpace(1, 1) : diamondSpace(arg(0), arg(1));
    if (name == "punctured_torus") return puncturedTorusSpace();
    if (name == "torus") return merminFamily(true, true, false);
    if (name == "glued_triangle") return gluedTriangleSpace();
    if (name == "mermin_square_state_dep") return merminFamily(false, true, false);
    if (name == "mermin_square_state_indep") return merminFamily(false, true, true);
    if (name == "square_Q") return squareFamily("Q");
    if (name == "space_H") return squareFamily("H");
    if (name == "space_A") return squareFamily("A");
    if (name == "Z") return twoSimplicesGlued(arg(0), arg(1));
    throw SSetError("unknown builtin space '" + name + "'");
}

std::vector<std::string> builtinNames() {
    return {"delta", "boundary_delta", "horn", "circle", "diamond", "punctured_torus", "torus",
            "glued_triangle", "mermin_square_state_dep", "mermin_square_state_indep", "square_Q",
            "space_H", "space_A", "Z"};
}

}  // namespace simpctx
