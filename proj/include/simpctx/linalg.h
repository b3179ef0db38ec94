/**
 * Exact integer linear algebra: Smith normal form with transform matrices,
 * solving linear systems over Z_d for arbitrary d >= 2, and Gaussian
 * elimination over prime fields.  This backs the Z_d outcome-assignment
 * solver and all cohomology computations uniformly over prime and composite
 * moduli.
 */
#pragma once

#include <optional>
#include <vector>

#include "simpctx/scalars.h"

namespace simpctx {

struct SmithForm {
    IntegerMatrix U;     // rows transform, unimodular
    IntegerMatrix V;     // columns transform, unimodular
    IntegerMatrix S;     // U * A * V = S, diagonal with divisibility chain
    int rank = 0;        // number of nonzero diagonal entries
    Integer diag(int k) const { return S(k, k); }
};

/// Smith normal form with both unimodular transforms.
SmithForm smithNormalForm(const IntegerMatrix& A);

/// Structure of all solutions of A x = b (mod d): one particular solution
/// plus independent generators of the solution lattice mod d.  In the
/// transformed coordinates the generators are coordinate-wise, so iterating
/// each generator over its order enumerates every solution exactly once.
struct ModSolutions {
    bool solvable = false;
    std::vector<int> particular;             // length = #columns, values in [0, d)
    std::vector<std::vector<int>> generators;  // each length = #columns
    std::vector<long> orders;                  // additive order of each generator
    long countBound(long cap) const;           // product of orders, clamped to cap+1
};

ModSolutions solveMod(const IntegerMatrix& A, const IntegerVector& b, int d);

/// Enumerates all solutions mod d (requires count <= cap; throws otherwise).
std::vector<std::vector<int>> enumerateMod(const ModSolutions& sols, int d, long cap);

/// Row echelon over GF(p); returns rank.  Used as the prime-field fast path.
int echelonModP(std::vector<std::vector<int>>& rows, int p);

/// Cyclic invariant factors of Z^n / (column span of M), 1s dropped,
/// 0 entries meaning free Z summands.
std::vector<Integer> cokernelInvariants(const IntegerMatrix& M, int n);

/// Exact solve A X = B by Gauss-Jordan; nullopt when singular/inconsistent.
std::optional<RationalMatrix> solveLinear(RationalMatrix A, RationalMatrix B);

}  // namespace simpctx
