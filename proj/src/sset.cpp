#include "simpctx/sset.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace simpctx {

SimplexRef::SimplexRef(std::vector<int> word, SimplexId b) : degeneracies(std::move(word)), base(b) {
    for (std::size_t k = 0; k + 1 < degeneracies.size(); ++k)
        if (degeneracies[k] <= degeneracies[k + 1])
            throw SSetError("degeneracy word must be strictly decreasing");
}

SimplexRef collapsedRef(SimplexId vertex, int n) {
    if (vertex.dim != 0) throw SSetError("collapsedRef expects a vertex");
    std::vector<int> word(n);
    for (int k = 0; k < n; ++k) word[k] = n - 1 - k;
    return SimplexRef(std::move(word), vertex);
}

// ---------------------------------------------------------------------------
// PresentedSSet

int PresentedSSet::countNondegenerate() const {
    int total = 0;
    for (const auto& row : labels_) total += static_cast<int>(row.size());
    return total;
}

std::optional<SimplexId> PresentedSSet::find(const std::string& label) const {
    for (int dim = 0; dim <= maxDim(); ++dim)
        for (int id = 0; id < count(dim); ++id)
            if (labels_[dim][id] == label) return SimplexId{dim, id};
    return std::nullopt;
}

SimplexId PresentedSSet::byLabel(const std::string& label) const {
    auto s = find(label);
    if (!s) throw SSetError("no simplex labeled '" + label + "'");
    return *s;
}

const SimplexRef& PresentedSSet::tableFace(SimplexId s, int i) const {
    if (s.dim < 1 || s.dim > maxDim() || s.id < 0 || s.id >= count(s.dim))
        throw SSetError("tableFace: simplex out of range");
    if (i < 0 || i > s.dim) throw SSetError("tableFace: face index out of range");
    return face_[s.dim][s.id][i];
}

SimplexRef PresentedSSet::face(const SimplexRef& r, int i) const {
    if (r.dim() < 1) throw SSetError("face of a vertex");
    if (i < 0 || i > r.dim()) throw SSetError("face index out of range");
    if (!r.isDegenerate()) return tableFace(r.base, i);
    // Normalize d_i against the degeneracy word; at most one face survives.
    OperatorWord w =
        composeWords(OperatorWord::face(i), OperatorWord::degeneracies(r.degeneracies), r.base.dim);
    if (w.facePart().empty()) return SimplexRef(w.degeneracyPart(), r.base);
    const SimplexRef& t = tableFace(r.base, w.facePart().front());
    if (!w.degeneracyPart().empty() || t.isDegenerate()) {
        OperatorWord combined = composeWords(OperatorWord::degeneracies(w.degeneracyPart()),
                                             OperatorWord::degeneracies(t.degeneracies), t.base.dim);
        return SimplexRef(combined.degeneracyPart(), t.base);
    }
    return t;
}

SimplexRef PresentedSSet::degenerate(const SimplexRef& r, int j) const {
    if (j < 0 || j > r.dim()) throw SSetError("degeneracy index out of range");
    OperatorWord w = composeWords(OperatorWord::degeneracy(j),
                                  OperatorWord::degeneracies(r.degeneracies), r.base.dim);
    return SimplexRef(w.degeneracyPart(), r.base);
}

SimplexRef PresentedSSet::apply(const SimplexRef& r, const OperatorWord& w) const {
    if (!w.validFor(r.dim())) throw SSetError("operator word does not apply in this dimension");
    OperatorWord total =
        composeWords(w, OperatorWord::degeneracies(r.degeneracies), r.base.dim);
    SimplexRef cur(r.base);
    // Apply the face part largest index first; each step may land on a
    // degenerate target, in which case re-normalize and continue.
    std::vector<int> faces = total.facePart();
    while (!faces.empty()) {
        int f = faces.back();
        faces.pop_back();
        SimplexRef t = face(cur, f);
        cur = t;
    }
    if (!total.degeneracyPart().empty()) {
        OperatorWord combined = composeWords(OperatorWord::degeneracies(total.degeneracyPart()),
                                             OperatorWord::degeneracies(cur.degeneracies),
                                             cur.base.dim);
        cur = SimplexRef(combined.degeneracyPart(), cur.base);
    }
    return cur;
}

std::vector<SimplexId> PresentedSSet::simplices(int dim) const {
    std::vector<SimplexId> out;
    for (int id = 0; id < count(dim); ++id) out.push_back({dim, id});
    return out;
}

SimplexRef PresentedSSet::spineEdge(SimplexId s, int i) const {
    if (i < 1 || i > s.dim) throw SSetError("spine edge index out of range");
    std::vector<int> skip;
    for (int t = 0; t <= s.dim; ++t)
        if (t != i - 1 && t != i) skip.push_back(t);
    return apply(SimplexRef(s), OperatorWord({}, skip));
}

std::vector<SimplexId> PresentedSSet::generators() const {
    std::set<SimplexId> nongen;
    for (int dim = 1; dim <= maxDim(); ++dim)
        for (int id = 0; id < count(dim); ++id)
            for (int i = 0; i <= dim; ++i) nongen.insert(tableFace({dim, id}, i).base);
    std::vector<SimplexId> out;
    for (int dim = 0; dim <= maxDim(); ++dim)
        for (int id = 0; id < count(dim); ++id)
            if (!nongen.count({dim, id})) out.push_back({dim, id});
    return out;
}

Subspace PresentedSSet::namedSubspace(const std::string& name) const {
    auto it = named_.find(name);
    if (it == named_.end()) throw SSetError("no subspace named '" + name + "'");
    return Subspace(*this, it->second);
}

std::vector<PresentedSSet::IdentityViolation> PresentedSSet::validate() const {
    std::vector<IdentityViolation> out;
    for (int dim = 2; dim <= maxDim(); ++dim) {
        for (int id = 0; id < count(dim); ++id) {
            SimplexRef s{SimplexId{dim, id}};
            for (int j = 1; j <= dim; ++j) {
                for (int i = 0; i < j; ++i) {
                    SimplexRef left = face(face(s, j), i);
                    SimplexRef right = face(face(s, i), j - 1);
                    if (left != right) out.push_back({SimplexId{dim, id}, i, j, left, right});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Builder

PresentedSSet::Builder::Builder(int max_dim) {
    if (max_dim < 0) throw SSetError("negative max dimension");
    s_.labels_.resize(max_dim + 1);
    s_.face_.resize(max_dim + 1);
}

SimplexId PresentedSSet::Builder::add(int dim, std::string label) {
    if (dim < 0 || dim > s_.maxDim()) throw SSetError("simplex dimension out of range");
    s_.labels_[dim].push_back(std::move(label));
    if (dim >= 1) s_.face_[dim].emplace_back(dim + 1);
    return {dim, static_cast<int>(s_.labels_[dim].size()) - 1};
}

void PresentedSSet::Builder::setFace(SimplexId s, int i, SimplexRef target) {
    if (s.dim < 1) throw SSetError("vertices have no faces");
    if (i < 0 || i > s.dim) throw SSetError("face index out of range");
    s_.face_[s.dim][s.id][i] = std::move(target);
}

void PresentedSSet::Builder::relabel(SimplexId s, std::string label) {
    s_.labels_[s.dim][s.id] = std::move(label);
}

void PresentedSSet::Builder::nameSubspace(const std::string& name, std::vector<SimplexId> generators) {
    s_.named_[name] = std::move(generators);
}

PresentedSSet PresentedSSet::Builder::build() const {
    const PresentedSSet& s = s_;
    for (int dim = 1; dim <= s.maxDim(); ++dim) {
        for (int id = 0; id < s.count(dim); ++id) {
            for (int i = 0; i <= dim; ++i) {
                const SimplexRef& t = s.face_[dim][id][i];
                if (t.dim() != dim - 1)
                    throw SSetError("face target of wrong dimension at " + s.labels_[dim][id]);
                if (t.base.dim < 0 || t.base.dim > s.maxDim() || t.base.id < 0 ||
                    t.base.id >= s.count(t.base.dim))
                    throw SSetError("dangling face target at " + s.labels_[dim][id]);
            }
        }
    }
    for (const auto& [name, gens] : s.named_)
        for (SimplexId g : gens)
            if (g.dim < 0 || g.dim > s.maxDim() || g.id < 0 || g.id >= s.count(g.dim))
                throw SSetError("dangling simplex in subspace '" + name + "'");
    return s_;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(const PresentedSSet& ambient, const std::vector<SimplexId>& generators) {
    ids_.resize(ambient.maxDim() + 1);
    std::vector<std::set<int>> seen(ambient.maxDim() + 1);
    std::deque<SimplexId> queue;
    for (SimplexId g : generators) {
        if (g.dim < 0 || g.dim > ambient.maxDim() || g.id < 0 || g.id >= ambient.count(g.dim))
            throw SSetError("subspace generator does not exist in the ambient space");
        if (seen[g.dim].insert(g.id).second) queue.push_back(g);
    }
    while (!queue.empty()) {
        SimplexId s = queue.front();
        queue.pop_front();
        if (s.dim == 0) continue;
        for (int i = 0; i <= s.dim; ++i) {
            SimplexId b = ambient.tableFace(s, i).base;
            if (seen[b.dim].insert(b.id).second) queue.push_back(b);
        }
    }
    for (int dim = 0; dim <= ambient.maxDim(); ++dim)
        ids_[dim].assign(seen[dim].begin(), seen[dim].end());
}

bool Subspace::contains(SimplexId s) const {
    if (s.dim < 0 || s.dim >= static_cast<int>(ids_.size())) return false;
    return std::binary_search(ids_[s.dim].begin(), ids_[s.dim].end(), s.id);
}

std::vector<SimplexId> Subspace::all() const {
    std::vector<SimplexId> out;
    for (int dim = 0; dim < static_cast<int>(ids_.size()); ++dim)
        for (int id : ids_[dim]) out.push_back({dim, id});
    return out;
}

bool Subspace::empty() const {
    for (const auto& row : ids_)
        if (!row.empty()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// SpaceMap

SpaceMap::SpaceMap(SSetPtr source, SSetPtr target) : src_(std::move(source)), dst_(std::move(target)) {
    images_.resize(src_->maxDim() + 1);
    for (int dim = 0; dim <= src_->maxDim(); ++dim) images_[dim].resize(src_->count(dim));
}

void SpaceMap::set(SimplexId s, SimplexRef image) {
    if (image.dim() != s.dim) throw SSetError("space map must preserve dimension");
    images_[s.dim][s.id] = std::move(image);
}

const SimplexRef& SpaceMap::at(SimplexId s) const { return images_[s.dim][s.id]; }

SimplexRef SpaceMap::eval(const SimplexRef& r) const {
    const SimplexRef& img = at(r.base);
    if (!r.isDegenerate()) return img;
    return dst_->apply(img, OperatorWord::degeneracies(r.degeneracies));
}

std::vector<SpaceMap::Violation> SpaceMap::check() const {
    std::vector<Violation> out;
    for (int dim = 1; dim <= src_->maxDim(); ++dim) {
        for (int id = 0; id < src_->count(dim); ++id) {
            SimplexId s{dim, id};
            for (int i = 0; i <= dim; ++i) {
                SimplexRef expected = eval(src_->tableFace(s, i));
                SimplexRef found = dst_->face(at(s), i);
                if (expected != found) out.push_back({s, i, expected, found});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gluing

namespace {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    // Returns true when two distinct classes merged; smaller root wins.
    bool merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

GlueResult glue(const SSetPtr& Xp, const std::vector<std::pair<SimplexRef, SimplexRef>>& pairs) {
    const PresentedSSet& X = *Xp;
    std::vector<UnionFind> uf;
    uf.reserve(X.maxDim() + 1);
    for (int dim = 0; dim <= X.maxDim(); ++dim) uf.emplace_back(X.count(dim));

    std::deque<std::pair<SimplexId, SimplexId>> work;
    auto identify = [&](const SimplexRef& a, const SimplexRef& b) {
        if (a.dim() != b.dim()) throw SSetError("cannot identify simplices of different dimensions");
        if (a.degeneracies != b.degeneracies)
            throw SSetError("gluing forces inconsistent degeneracies");
        if (a.base.dim != b.base.dim) throw SSetError("gluing forces inconsistent degeneracies");
        if (uf[a.base.dim].merge(a.base.id, b.base.id)) work.push_back({a.base, b.base});
    };
    for (const auto& [a, b] : pairs) identify(a, b);
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        if (a.dim == 0) continue;
        for (int i = 0; i <= a.dim; ++i) identify(X.tableFace(a, i), X.tableFace(b, i));
    }

    // Compact renumbering by class representative (smallest id).
    std::vector<std::vector<int>> newId(X.maxDim() + 1);
    std::vector<int> counts(X.maxDim() + 1, 0);
    for (int dim = 0; dim <= X.maxDim(); ++dim) {
        newId[dim].assign(X.count(dim), -1);
        for (int id = 0; id < X.count(dim); ++id)
            if (uf[dim].find(id) == id) newId[dim][id] = counts[dim]++;
        for (int id = 0; id < X.count(dim); ++id) newId[dim][id] = newId[dim][uf[dim].find(id)];
    }

    PresentedSSet::Builder builder(X.maxDim());
    for (int dim = 0; dim <= X.maxDim(); ++dim) {
        for (int id = 0; id < X.count(dim); ++id) {
            if (uf[dim].find(id) != id) continue;
            std::string label = X.label({dim, id});
            if (label.empty()) {
                for (int other = id + 1; other < X.count(dim) && label.empty(); ++other)
                    if (uf[dim].find(other) == id) label = X.label({dim, other});
            }
            builder.add(dim, std::move(label));
        }
    }
    auto mapRef = [&](const SimplexRef& r) {
        return SimplexRef(r.degeneracies, SimplexId{r.base.dim, newId[r.base.dim][r.base.id]});
    };
    for (int dim = 1; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            if (uf[dim].find(id) != id) continue;
            SimplexId target{dim, newId[dim][id]};
            for (int i = 0; i <= dim; ++i) builder.setFace(target, i, mapRef(X.tableFace({dim, id}, i)));
        }
    for (const auto& [name, gens] : X.namedSubspaces()) {
        std::vector<SimplexId> mapped;
        for (SimplexId g : gens) mapped.push_back({g.dim, newId[g.dim][g.id]});
        builder.nameSubspace(name, std::move(mapped));
    }

    GlueResult result{builder.buildPtr(), SpaceMap()};
    result.projection = SpaceMap(Xp, result.space);
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id)
            result.projection.set({dim, id}, SimplexRef(SimplexId{dim, newId[dim][id]}));
    return result;
}

// ---------------------------------------------------------------------------
// Quotient

QuotientResult quotient(const SSetPtr& Xp, const Subspace& Z) {
    const PresentedSSet& X = *Xp;
    if (Z.empty()) throw SSetError("quotient by an empty subspace");
    // Verify face-closure explicitly: a subspace built through Subspace() is
    // closed by construction, but the ids may have been assembled by hand.
    for (SimplexId s : Z.all()) {
        if (s.dim == 0) continue;
        for (int i = 0; i <= s.dim; ++i)
            if (!Z.contains(X.tableFace(s, i)))
                throw SSetError("subspace is not closed under faces");
    }

    PresentedSSet::Builder builder(X.maxDim());
    SimplexId star = builder.add(0, "*");
    std::vector<std::vector<int>> newId(X.maxDim() + 1);
    for (int dim = 0; dim <= X.maxDim(); ++dim) {
        newId[dim].assign(X.count(dim), -1);
        for (int id = 0; id < X.count(dim); ++id) {
            if (Z.contains(SimplexId{dim, id})) continue;
            newId[dim][id] = builder.add(dim, X.label({dim, id})).id;
        }
    }
    auto mapRef = [&](const SimplexRef& r) -> SimplexRef {
        if (Z.contains(r.base)) return collapsedRef(star, r.dim());
        return SimplexRef(r.degeneracies, SimplexId{r.base.dim, newId[r.base.dim][r.base.id]});
    };
    for (int dim = 1; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            if (newId[dim][id] < 0) continue;
            for (int i = 0; i <= dim; ++i)
                builder.setFace({dim, newId[dim][id]}, i, mapRef(X.tableFace({dim, id}, i)));
        }
    builder.nameSubspace("basepoint", {star});

    QuotientResult result{builder.buildPtr(), SpaceMap(), star};
    result.projection = SpaceMap(Xp, result.space);
    for (int dim = 0; dim <= X.maxDim(); ++dim)
        for (int id = 0; id < X.count(dim); ++id) {
            SimplexId s{dim, id};
            if (Z.contains(s))
                result.projection.set(s, collapsedRef(star, dim));
            else
                result.projection.set(s, SimplexRef(SimplexId{dim, newId[dim][id]}));
        }
    return result;
}

// ---------------------------------------------------------------------------
// Materialization

SubspaceResult materialize(const SSetPtr& Xp, const Subspace& Z) {
    const PresentedSSet& X = *Xp;
    int top = 0;
    for (int dim = 0; dim < static_cast<int>(Z.ids().size()); ++dim)
        if (!Z.ids()[dim].empty()) top = dim;
    PresentedSSet::Builder builder(top);
    std::vector<std::vector<int>> newId(X.maxDim() + 1);
    for (int dim = 0; dim <= X.maxDim(); ++dim) newId[dim].assign(X.count(dim), -1);
    for (int dim = 0; dim <= top; ++dim)
        for (int id : Z.ids()[dim]) newId[dim][id] = builder.add(dim, X.label({dim, id})).id;
    for (int dim = 1; dim <= top; ++dim)
        for (int id : Z.ids()[dim]) {
            for (int i = 0; i <= dim; ++i) {
                SimplexRef t = X.tableFace({dim, id}, i);
                builder.setFace({dim, newId[dim][id]}, i,
                                SimplexRef(t.degeneracies, {t.base.dim, newId[t.base.dim][t.base.id]}));
            }
        }

    SubspaceResult result{builder.buildPtr(), SpaceMap()};
    result.inclusion = SpaceMap(result.space, Xp);
    for (int dim = 0; dim <= top; ++dim)
        for (int id : Z.ids()[dim])
            result.inclusion.set({dim, newId[dim][id]}, SimplexRef(SimplexId{dim, id}));
    return result;
}

// ---------------------------------------------------------------------------
// Isomorphism testing (tiny spaces; plain backtracking)

namespace {

bool extendIso(const PresentedSSet& A, const PresentedSSet& B,
               std::vector<std::vector<int>>& map, std::vector<std::vector<bool>>& used, int dim,
               int id) {
    if (dim > A.maxDim()) return true;
    if (id >= A.count(dim)) return extendIso(A, B, map, used, dim + 1, 0);
    for (int cand = 0; cand < B.count(dim); ++cand) {
        if (used[dim][cand]) continue;
        bool ok = true;
        if (dim >= 1) {
            for (int i = 0; i <= dim && ok; ++i) {
                SimplexRef t = A.tableFace({dim, id}, i);
                SimplexRef mapped(t.degeneracies,
                                  SimplexId{t.base.dim, map[t.base.dim][t.base.id]});
                ok = (mapped == B.tableFace({dim, cand}, i));
            }
        }
        if (!ok) continue;
        map[dim][id] = cand;
        used[dim][cand] = true;
        if (extendIso(A, B, map, used, dim, id + 1)) return true;
        used[dim][cand] = false;
        map[dim][id] = -1;
    }
    return false;
}

}  // namespace

bool isIsomorphic(const PresentedSSet& A, const PresentedSSet& B) {
    if (A.maxDim() != B.maxDim()) return false;
    for (int dim = 0; dim <= A.maxDim(); ++dim)
        if (A.count(dim) != B.count(dim)) return false;
    std::vector<std::vector<int>> map(A.maxDim() + 1);
    std::vector<std::vector<bool>> used(A.maxDim() + 1);
    for (int dim = 0; dim <= A.maxDim(); ++dim) {
        map[dim].assign(A.count(dim), -1);
        used[dim].assign(B.count(dim), false);
    }
    return extendIso(A, B, map, used, 0, 0);
}

}  // namespace simpctx
