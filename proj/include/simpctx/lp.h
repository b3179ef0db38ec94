/**
 * Exact rational linear programming: phase-1 simplex with Bland's rule and
 * Farkas certificates, a small phase-2 optimizer, Fourier-Motzkin
 * elimination, and facet enumeration of vertex hulls by double description.
 * Everything is exact; verdicts on boundary instances are decided, not
 * approximated.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simpctx/scalars.h"

namespace simpctx {

enum class Rel { Eq, Le };

/// Rows a_i . x (=|<=) b_i over named variables (x unrestricted in sign
/// unless a row says otherwise).
struct LinearSystem {
    RationalMatrix A;
    std::vector<Rel> rel;
    RationalVector b;
    std::vector<std::string> names;  // optional, per column

    int rows() const { return static_cast<int>(A.rows()); }
    int cols() const { return static_cast<int>(A.cols()); }
    void addRow(const RationalVector& a, Rel r, const Rational& rhs);
};

/// Feasibility of {A x = b, x >= 0}; on failure delivers y with
/// y.A <= 0 (componentwise) and y.b > 0, verified exactly before returning.
struct StandardFeasibility {
    bool feasible = false;
    RationalVector point;
    RationalVector farkas;
};
StandardFeasibility solveStandardFeasibility(const RationalMatrix& A, const RationalVector& b);

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// max c.x subject to the system, variables free.
struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector point;
};
LpResult maximize(const LinearSystem& sys, const RationalVector& c);

/// Exact projection: eliminates the given variable (column) from an
/// all-inequality system, preserving the solution set of the others.
/// Equalities are expanded into inequality pairs first.
LinearSystem fourierMotzkin(const LinearSystem& sys, int var);

/// Normalizes rows to primitive integer coefficients and removes duplicates
/// and trivially vacuous rows.  Throws if a row reads 0 <= negative.
LinearSystem simplifySystem(const LinearSystem& sys);

/// Removes rows implied by the remaining ones (exact LP test per row).
LinearSystem removeRedundant(const LinearSystem& sys);

/// One-sided facet a.x <= b in primitive integer form.
struct Facet {
    RationalVector a;
    Rational b;
    friend bool operator==(const Facet&, const Facet&) = default;
};

/// H-description of conv(points): affine-hull equations plus facets,
/// computed by double description on the polar cone.
struct HullDescription {
    std::vector<Facet> facets;
    std::vector<Facet> equations;  // a.x = b, also primitive
    int dimension = 0;             // affine dimension of the hull
};
HullDescription hullFacets(const std::vector<RationalVector>& points);

/// Canonical form for set comparison of inequality systems in tests.
std::vector<Facet> canonicalFacets(const LinearSystem& sys);

}  // namespace simpctx
