/**
 * Measurement spaces used throughout: simplices, horns, the circle, the
 * diamond, the punctured torus and torus carrying the CHSH identifications,
 * both Mermin square variants, and the square/H/A spaces from the
 * extension-based noncontextuality arguments.
 *
 * Orientation conventions are hard-coded to match the presentations the
 * constructions are drawn from: a triangle with ordered pair (A, B) of
 * measurements has d2 -> A, d0 -> B and d1 -> the inferred XOR edge.
 */
#pragma once

#include <vector>

#include "simpctx/sset.h"

namespace simpctx {

/// Factory keyed by name:
///   delta(n), boundary_delta(n), horn(n,k), circle, diamond[(a,b)],
///   punctured_torus, torus, glued_triangle, mermin_square_state_dep,
///   mermin_square_state_indep, square_Q, space_H, space_A, Z(d,n).
/// Throws SSetError for unknown names or invalid parameters.
SSetPtr builtinSpace(const std::string& name, const std::vector<int>& params = {});

std::vector<std::string> builtinNames();

/// Ordered simplicial complex presentation: vertices plus facets given as
/// strictly increasing vertex-index tuples; all faces are generated and
/// labeled by concatenated vertex labels.
SSetPtr complexSpace(const std::vector<std::string>& vertex_labels,
                     const std::vector<std::vector<int>>& facets);

/// Disjoint union, keeping labels; returns the result and the id offsets of
/// the second summand per dimension.
struct DisjointUnion {
    SSetPtr space;
    std::vector<int> offsetB;
};
DisjointUnion disjointUnion(const PresentedSSet& A, const PresentedSSet& B);

}  // namespace simpctx
