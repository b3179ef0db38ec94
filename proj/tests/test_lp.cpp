#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.h"

using namespace simpctx;
using namespace simpctx::testing;

namespace {

RationalVector vec(std::initializer_list<long> vals) {
    RationalVector v(static_cast<int>(vals.size()));
    int k = 0;
    for (long x : vals) v(k++) = Rational(x);
    return v;
}

// Consistency rows for one triangle whose edges carry zero-outcome
// probabilities alpha, beta, gamma (in the face order d2, d0, d1): a joint
// pair distribution with these marginals exists iff all four hold.
void triangleRows(LinearSystem& sys, int n, int a, int b, int c) {
    auto row = [&](std::initializer_list<std::pair<int, long>> terms, long rhs) {
        RationalVector r = RationalVector::Zero(n);
        for (auto [k, v] : terms) r(k) = Rational(v);
        sys.addRow(r, Rel::Le, Rational(rhs));
    };
    row({{a, -1}, {b, -1}, {c, -1}}, -1);
    row({{a, -1}, {b, 1}, {c, 1}}, 1);
    row({{a, 1}, {b, -1}, {c, 1}}, 1);
    row({{a, 1}, {b, 1}, {c, -1}}, 1);
}

void boxRows(LinearSystem& sys, int n, int k) {
    RationalVector r = RationalVector::Zero(n);
    r(k) = Rational(1);
    sys.addRow(r, Rel::Le, Rational(1));
    r(k) = Rational(-1);
    sys.addRow(r, Rel::Le, Rational(0));
}

void chshRows(LinearSystem& sys, int n, int x, int y, int u, int v) {
    auto row = [&](long cx, long cy, long cu, long cv, long rhs) {
        RationalVector r = RationalVector::Zero(n);
        r(x) = Rational(cx);
        r(y) = Rational(cy);
        r(u) = Rational(cu);
        r(v) = Rational(cv);
        sys.addRow(r, Rel::Le, Rational(rhs));
    };
    for (int flip = 0; flip < 4; ++flip) {
        long s[4] = {1, 1, 1, 1};
        s[flip] = -1;
        row(s[0], s[1], s[2], s[3], 2);
        row(-s[0], -s[1], -s[2], -s[3], 0);
    }
}

std::vector<Facet> canon(const LinearSystem& sys) { return canonicalFacets(removeRedundant(sys)); }

}  // namespace

TEST_CASE("standard-form feasibility with exact certificates") {
    // x0 + x1 = 1, x0 - x1 = 0 has the point (1/2, 1/2).
    RationalMatrix A(2, 2);
    A << Rational(1), Rational(1), Rational(1), Rational(-1);
    auto r = solveStandardFeasibility(A, vec({1, 0}));
    REQUIRE(r.feasible);
    CHECK(r.point(0) == rat(1, 2));
    CHECK(r.point(1) == rat(1, 2));

    // x0 + x1 = 1 and x0 + x1 = 2 is infeasible; the Farkas vector is
    // re-verified inside the solver before being returned.
    RationalMatrix B(2, 2);
    B << Rational(1), Rational(1), Rational(1), Rational(1);
    auto s = solveStandardFeasibility(B, vec({1, 2}));
    REQUIRE(!s.feasible);
    CHECK(s.farkas.dot(vec({1, 2})) > 0);
}

TEST_CASE("maximization with free variables") {
    // max x + y subject to x + y <= 3, x - y <= 1, -x <= 0, -y <= 0.
    LinearSystem sys;
    sys.A.resize(0, 2);
    sys.addRow(vec({1, 1}), Rel::Le, Rational(3));
    sys.addRow(vec({1, -1}), Rel::Le, Rational(1));
    sys.addRow(vec({-1, 0}), Rel::Le, Rational(0));
    sys.addRow(vec({0, -1}), Rel::Le, Rational(0));
    auto r = maximize(sys, vec({1, 1}));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(3));

    auto unb = maximize(sys, vec({-1, 1}));  // y - x is unbounded? no: y <= 3 - x, x >= 0
    CHECK(unb.status == LpStatus::Optimal);

    LinearSystem open;
    open.A.resize(0, 1);
    open.addRow(vec({-1}), Rel::Le, Rational(0));
    CHECK(maximize(open, vec({1})).status == LpStatus::Unbounded);

    LinearSystem infeasible;
    infeasible.A.resize(0, 1);
    infeasible.addRow(vec({1}), Rel::Le, Rational(0));
    infeasible.addRow(vec({-1}), Rel::Le, Rational(-1));
    CHECK(maximize(infeasible, vec({1})).status == LpStatus::Infeasible);
}

TEST_CASE("horn extension projects to the trivial box bounds") {
    // Variables (x, y, z) = (p01^0, p12^0, p02^0); eliminating the missing
    // edge z must leave only 0 <= x, y <= 1.
    LinearSystem sys;
    sys.A.resize(0, 3);
    triangleRows(sys, 3, 0, 1, 2);
    boxRows(sys, 3, 2);
    LinearSystem projected = fourierMotzkin(sys, 2);
    LinearSystem expected;
    expected.A.resize(0, 3);
    boxRows(expected, 3, 0);
    boxRows(expected, 3, 1);
    CHECK(canon(projected) == canon(expected));
}

TEST_CASE("diamond extension projects to the CHSH inequalities") {
    // Variables (x, y, u, v, z): two triangles share the z edge.
    LinearSystem sys;
    sys.A.resize(0, 5);
    triangleRows(sys, 5, 0, 1, 4);
    triangleRows(sys, 5, 2, 3, 4);
    boxRows(sys, 5, 4);
    LinearSystem projected = fourierMotzkin(sys, 4);

    LinearSystem expected;
    expected.A.resize(0, 5);
    chshRows(expected, 5, 0, 1, 2, 3);
    for (int k = 0; k < 4; ++k) boxRows(expected, 5, k);
    CHECK(canon(projected) == canon(expected));
}

TEST_CASE("two glued diamonds project to the three CHSH families") {
    // Variables (p12, p13, p02, p03, p0'2, p0'3, z = p23): three triangles
    // share the 23 edge.
    LinearSystem sys;
    sys.A.resize(0, 7);
    triangleRows(sys, 7, 0, 6, 1);  // triangle 123: d2 = 12, d0 = 23, d1 = 13
    triangleRows(sys, 7, 2, 6, 3);  // triangle 023
    triangleRows(sys, 7, 4, 6, 5);  // triangle 0'23
    boxRows(sys, 7, 6);
    LinearSystem projected = fourierMotzkin(sys, 6);

    LinearSystem expected;
    expected.A.resize(0, 7);
    chshRows(expected, 7, 0, 1, 2, 3);
    chshRows(expected, 7, 0, 1, 4, 5);
    chshRows(expected, 7, 2, 3, 4, 5);
    for (int k = 0; k < 6; ++k) boxRows(expected, 7, k);
    CHECK(canon(projected) == canon(expected));
}

TEST_CASE("fourierMotzkin rejects unknown variables and keeps solutions") {
    LinearSystem sys;
    sys.A.resize(0, 2);
    sys.addRow(vec({1, 1}), Rel::Le, Rational(1));
    CHECK_THROWS_AS(fourierMotzkin(sys, 5), std::invalid_argument);
    // Eliminating y from {x + y <= 1, -y <= 0} leaves x <= 1.
    sys.addRow(vec({0, -1}), Rel::Le, Rational(0));
    auto projected = fourierMotzkin(sys, 1);
    auto rows = canonicalFacets(projected);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].a(0) == Rational(1));
    CHECK(rows[0].b == Rational(1));
}

TEST_CASE("hull facets of a square and of a segment") {
    std::vector<RationalVector> square = {vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})};
    auto h = hullFacets(square);
    CHECK(h.dimension == 2);
    CHECK(h.equations.empty());
    CHECK(h.facets.size() == 4);

    std::vector<RationalVector> segment = {vec({0, 0}), vec({2, 2})};
    auto s = hullFacets(segment);
    CHECK(s.dimension == 1);
    CHECK(s.equations.size() == 1);  // x = y
    CHECK(s.facets.size() == 2);
}

TEST_CASE("hull facets of the even-parity demicube match FM projection") {
    // The vertices of conv{v in {0,1}^4 : parity even} are exactly the
    // deterministic XOR boundary points; the H-description is the 8 CHSH
    // facets plus the 8 box facets.
    std::vector<RationalVector> points;
    for (int v = 0; v < 16; ++v) {
        int bits[4] = {v & 1, (v >> 1) & 1, (v >> 2) & 1, (v >> 3) & 1};
        if ((bits[0] + bits[1] + bits[2] + bits[3]) % 2 != 0) continue;
        points.push_back(vec({bits[0], bits[1], bits[2], bits[3]}));
    }
    REQUIRE(points.size() == 8);
    auto h = hullFacets(points);
    CHECK(h.dimension == 4);
    CHECK(h.facets.size() == 16);

    LinearSystem expected;
    expected.A.resize(0, 4);
    chshRows(expected, 4, 0, 1, 2, 3);
    for (int k = 0; k < 4; ++k) boxRows(expected, 4, k);
    LinearSystem got;
    got.A.resize(0, 4);
    for (const Facet& f : h.facets) got.addRow(f.a, Rel::Le, f.b);
    CHECK(canonicalFacets(got) == canonicalFacets(expected));
}

TEST_CASE("removeRedundant strips implied rows") {
    LinearSystem sys;
    sys.A.resize(0, 1);
    sys.addRow(vec({1}), Rel::Le, Rational(1));
    sys.addRow(vec({1}), Rel::Le, Rational(2));  // implied
    sys.addRow(vec({-1}), Rel::Le, Rational(0));
    auto trimmed = removeRedundant(sys);
    CHECK(trimmed.rows() == 2);
}
