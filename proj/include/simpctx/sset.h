/**
 * Presented simplicial sets: finite, dimension-truncated spaces given by
 * their nondegenerate simplices and face tables into possibly-degenerate
 * targets.  Degenerate simplices are never stored; they are reached through
 * operator words over a nondegenerate base (the unique epi-mono
 * factorization), so every simplicial map out of a presented space is
 * determined by its values on nondegenerate simplices.
 */
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "simpctx/word.h"

namespace simpctx {

struct SSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimplexId {
    int dim = 0;
    int id = 0;
    friend bool operator==(const SimplexId&, const SimplexId&) = default;
    friend auto operator<=>(const SimplexId&, const SimplexId&) = default;
};

/// A simplex reference: a degeneracy word acting on a nondegenerate base.
/// The empty word refers to the base itself.
struct SimplexRef {
    std::vector<int> degeneracies;  // strictly decreasing; empty = nondegenerate
    SimplexId base;

    SimplexRef() = default;
    SimplexRef(SimplexId b) : base(b) {}  // NOLINT(google-explicit-constructor)
    SimplexRef(std::vector<int> word, SimplexId b);

    bool isDegenerate() const { return !degeneracies.empty(); }
    int dim() const { return base.dim + static_cast<int>(degeneracies.size()); }

    friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
    friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

/// The totally degenerate n-simplex over a vertex: s_{n-1} ... s_0 v.
SimplexRef collapsedRef(SimplexId vertex, int n);

class PresentedSSet;
using SSetPtr = std::shared_ptr<const PresentedSSet>;

/// Face-closed collection of nondegenerate simplices of an ambient space.
class Subspace {
public:
    Subspace() = default;
    /// Closes the given generators under iterated faces.
    Subspace(const PresentedSSet& ambient, const std::vector<SimplexId>& generators);

    bool contains(SimplexId s) const;
    /// A degenerate ref belongs to the subspace iff its base does.
    bool contains(const SimplexRef& r) const { return contains(r.base); }
    const std::vector<std::vector<int>>& ids() const { return ids_; }
    std::vector<SimplexId> all() const;
    bool empty() const;

private:
    std::vector<std::vector<int>> ids_;  // per dimension, sorted
};

class SpaceMap;

class PresentedSSet {
public:
    class Builder;

    int maxDim() const { return static_cast<int>(labels_.size()) - 1; }
    int count(int dim) const {
        return (dim >= 0 && dim <= maxDim()) ? static_cast<int>(labels_[dim].size()) : 0;
    }
    int countNondegenerate() const;

    const std::string& label(SimplexId s) const { return labels_[s.dim][s.id]; }
    std::optional<SimplexId> find(const std::string& label) const;
    /// Label lookup that throws with the offending name on failure.
    SimplexId byLabel(const std::string& label) const;

    /// The i-th face from the table (nondegenerate simplices only, dim >= 1).
    const SimplexRef& tableFace(SimplexId s, int i) const;

    /// Single face of a possibly-degenerate reference, via the simplicial
    /// identities; consults the face table at most once.
    SimplexRef face(const SimplexRef& r, int i) const;

    /// j-th degeneracy of a reference.
    SimplexRef degenerate(const SimplexRef& r, int j) const;

    /// Evaluates an operator word on a reference (faces first, then
    /// degeneracies), producing a normalized reference.
    SimplexRef apply(const SimplexRef& r, const OperatorWord& w) const;

    /// All nondegenerate simplices of a dimension.
    std::vector<SimplexId> simplices(int dim) const;

    /// Spine edge i (from vertex i-1 to vertex i) of an n-simplex, 1 <= i <= n.
    SimplexRef spineEdge(SimplexId s, int i) const;

    /// Nondegenerate simplices that are not an iterated face of another one.
    std::vector<SimplexId> generators() const;

    /// Named subspaces attached to the presentation (e.g. "boundary", "loop").
    const std::map<std::string, std::vector<SimplexId>>& namedSubspaces() const { return named_; }
    Subspace namedSubspace(const std::string& name) const;

    struct IdentityViolation {
        SimplexId simplex;
        int i = 0;
        int j = 0;
        SimplexRef left;   // d_i d_j
        SimplexRef right;  // d_{j-1} d_i
    };
    /// Every violated instance of d_i d_j = d_{j-1} d_i (i < j).
    std::vector<IdentityViolation> validate() const;

private:
    friend class Builder;
    std::vector<std::vector<std::string>> labels_;           // [dim][id]
    std::vector<std::vector<std::vector<SimplexRef>>> face_;  // [dim][id][i], dim >= 1
    std::map<std::string, std::vector<SimplexId>> named_;
};

class PresentedSSet::Builder {
public:
    explicit Builder(int max_dim);

    SimplexId add(int dim, std::string label = {});
    void setFace(SimplexId s, int i, SimplexRef target);
    void relabel(SimplexId s, std::string label);
    void nameSubspace(const std::string& name, std::vector<SimplexId> generators);

    /// Checks structural well-formedness (faces present, dimensions match)
    /// and returns the immutable space.  Simplicial identities are checked
    /// separately by validate().
    PresentedSSet build() const;
    SSetPtr buildPtr() const { return std::make_shared<const PresentedSSet>(build()); }

private:
    PresentedSSet s_;
};

/// Map of spaces, stored on nondegenerate simplices of the source.
class SpaceMap {
public:
    SpaceMap() = default;
    SpaceMap(SSetPtr source, SSetPtr target);

    const PresentedSSet& source() const { return *src_; }
    const PresentedSSet& target() const { return *dst_; }
    const SSetPtr& sourcePtr() const { return src_; }
    const SSetPtr& targetPtr() const { return dst_; }

    void set(SimplexId s, SimplexRef image);
    const SimplexRef& at(SimplexId s) const;
    /// Image of a possibly-degenerate reference.
    SimplexRef eval(const SimplexRef& r) const;

    struct Violation {
        SimplexId simplex;
        int i = 0;
        SimplexRef expected;  // f(d_i sigma)
        SimplexRef found;     // d_i f(sigma)
    };
    /// Checks d_i f(sigma) = f(d_i sigma) everywhere.
    std::vector<Violation> check() const;
    bool isValid() const { return check().empty(); }

private:
    SSetPtr src_;
    SSetPtr dst_;
    std::vector<std::vector<SimplexRef>> images_;
};

/// Quotient presentation identifying the given pairs of nondegenerate
/// simplices, with the identification closed under iterated faces
/// (union-find with smallest-id class representatives).  Returns the glued
/// space and the projection map.
struct GlueResult {
    SSetPtr space;
    SpaceMap projection;
};
GlueResult glue(const SSetPtr& X, const std::vector<std::pair<SimplexRef, SimplexRef>>& pairs);

/// Quotient X/Z collapsing a face-closed subspace to a point.  The collapsed
/// point is one nondegenerate vertex; all higher collapsed simplices are its
/// degeneracies.
struct QuotientResult {
    SSetPtr space;
    SpaceMap projection;
    SimplexId basepoint;
};
QuotientResult quotient(const SSetPtr& X, const Subspace& Z);

/// Materializes a subspace as a standalone presentation plus its inclusion.
struct SubspaceResult {
    SSetPtr space;
    SpaceMap inclusion;
};
SubspaceResult materialize(const SSetPtr& X, const Subspace& Z);

/// Dimension-wise face-preserving bijection test (labels ignored).
bool isIsomorphic(const PresentedSSet& A, const PresentedSSet& B);

}  // namespace simpctx
