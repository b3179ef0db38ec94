#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simpctx/builtins.h"
#include "simpctx/quantum.h"
#include "support.h"

using namespace simpctx;
using namespace simpctx::testing;

TEST_CASE("Pauli parsing, products and commutation") {
    CHECK(formatPauli(parsePauli("XX")) == "+XX");
    CHECK(formatPauli(parsePauli("-IZ")) == "-IZ");
    CHECK_THROWS_AS(parsePauli("XQ"), QuantumError);

    CHECK(pauliProduct(parsePauli("+IX"), parsePauli("+XI")) == parsePauli("+XX"));
    CHECK(pauliProduct(parsePauli("+ZX"), parsePauli("+XZ")) == parsePauli("+YY"));
    CHECK(pauliProduct(parsePauli("+XX"), parsePauli("+ZZ")) == parsePauli("-YY"));
    CHECK(pauliProduct(parsePauli("-YY"), parsePauli("-II")) == parsePauli("+YY"));
    CHECK_THROWS_AS(pauliProduct(parsePauli("+X"), parsePauli("+Z")), QuantumError);

    CHECK(pauliCommute(parsePauli("+XX"), parsePauli("+ZZ")));
    CHECK(!pauliCommute(parsePauli("+XI"), parsePauli("+ZI")));
}

TEST_CASE("Pauli matrices are Hermitian, unitary and square to one") {
    for (const char* word : {"+X", "+Y", "+Z", "-Y", "+XY", "-ZZ"}) {
        Pauli p = parsePauli(word);
        ComplexMatrix m = pauliMatrix(p);
        CHECK(isHermitian(m));
        ComplexMatrix sq = m * m;
        for (int r = 0; r < sq.rows(); ++r)
            for (int c = 0; c < sq.cols(); ++c)
                CHECK(sq(r, c) == (r == c ? GaussianRational(Rational(1)) : GaussianRational()));
    }
}

TEST_CASE("spectral measurement of a single Z and of the X pair") {
    auto mz = spectralMeasurement({parsePauli("+Z")});
    CHECK(mz.at({0})(0, 0) == GaussianRational(Rational(1)));
    CHECK(mz.at({0})(1, 1) == GaussianRational());
    CHECK(mz.at({1})(1, 1) == GaussianRational(Rational(1)));

    // (1 (x) X, X (x) 1): the four rank-one product projectors.
    auto mx = spectralMeasurement({parsePauli("+IX"), parsePauli("+XI")});
    CHECK(mx.projectors.size() == 4);
    for (const auto& [theta, proj] : mx.projectors) {
        GaussianRational tr = traceOf(proj);
        CHECK(tr == GaussianRational(Rational(1)));  // rank one
    }
    // Pi^{ab} = (1 + (-1)^a X)/2 (x) (1 + (-1)^b X)/2 at entry (0,0) is 1/4.
    CHECK(mx.at({0, 0})(0, 0) == GaussianRational(rat(1, 4)));

    CHECK_THROWS_AS(spectralMeasurement({parsePauli("+XI"), parsePauli("+ZI")}), QuantumError);
}

TEST_CASE("the tuple is recovered from its spectral measurement") {
    std::vector<Pauli> tuple = {parsePauli("+XX"), parsePauli("+ZZ")};
    auto m = spectralMeasurement(tuple);
    auto back = tupleFromMeasurement(m, 2);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == tuple[0]);
    CHECK(back[1] == tuple[1]);
}

TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(bellPhiPlus());
    CHECK_NOTHROW(ghz3());
    CHECK_NOTHROW(maximallyMixed(2));

    // Trace must be one.
    ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
    bad(0, 0) = GaussianRational(Rational(2));
    CHECK_THROWS_AS((DensityMatrix(bad)), QuantumError);
    // Hermitian but not positive semidefinite.
    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = GaussianRational(Rational(2));
    neg(1, 1) = GaussianRational(Rational(-1));
    CHECK_THROWS_AS((DensityMatrix(neg)), QuantumError);
    // Pure states from exact amplitudes.
    CHECK_THROWS_AS(pureState({GaussianRational(Rational(1)), GaussianRational(Rational(1))}),
                    QuantumError);
    CHECK_NOTHROW(pureState({GaussianRational(rat(3, 5)), GaussianRational(rat(4, 5))}));
}

TEST_CASE("the Mermin assignments validate; the broken torus context is caught") {
    CHECK(merminStateDepAssignment().isValid());
    CHECK(merminStateIndepAssignment().isValid());

    // On the plain torus the (XX, ZZ) context demands (XX)(ZZ) on its d1
    // face, but the edge carries +YY: the report names the offending
    // triangle.
    SSetPtr torus = builtinSpace("torus");
    CommutingTupleAssignment A(torus, 2);
    A.setEdge("x0", "+XI");
    A.setEdge("y0", "+IX");
    A.setEdge("x1", "+ZI");
    A.setEdge("y1", "+IZ");
    A.setEdge("x0+y0", "+XX");
    A.setEdge("x1+y0", "+ZX");
    A.setEdge("x0+y1", "+XZ");
    A.setEdge("x1+y1", "+ZZ");
    A.setEdge("diag", "+YY");
    auto report = A.check();
    REQUIRE(!report.empty());
    bool names_plus = false;
    for (const auto& v : report)
        names_plus = names_plus || torus->label(v.simplex) == "sigma_plus";
    CHECK(names_plus);

    // A single commuting pair is fine.
    SSetPtr d2 = builtinSpace("delta", {2});
    CommutingTupleAssignment pair(d2, 2);
    pair.setEdge("01", "+XI");
    pair.setEdge("12", "+IX");
    pair.setEdge("02", "+XX");
    CHECK(pair.isValid());
}

TEST_CASE("Born rule on the Bell state: boundary eigenvalues (0, 1, 0)") {
    auto A = merminStateDepAssignment();
    auto p = born(A, bellPhiPlus());
    CHECK(p.check().empty());
    const PresentedSSet& X = A.space();
    CHECK(p.at(X.byLabel("x0+y0")).at({0}) == Rational(1));  // XX eigenvalue +1
    CHECK(p.at(X.byLabel("diag")).at({1}) == Rational(1));   // YY eigenvalue -1
    CHECK(p.at(X.byLabel("x1+y1")).at({0}) == Rational(1));  // ZZ eigenvalue +1
    // Stabilized contexts carry exact deltas on the correlated pairs.
    auto cell = p.at(X.byLabel("sigma_y0x0"));
    CHECK(cell.at({0, 0}) == rat(1, 2));
    CHECK(cell.at({1, 1}) == rat(1, 2));
    CHECK(cell.at({0, 1}) == Rational(0));
}

TEST_CASE("Born rule on the maximally mixed state is uniform") {
    auto A = merminStateDepAssignment();
    auto p = born(A, maximallyMixed(2));
    const PresentedSSet& X = A.space();
    for (int id = 0; id < X.count(2); ++id)
        for (const Outcome& theta : OutcomeSpace::nerve(2).simplices(2))
            CHECK(p.at({2, id}).at(theta) == rat(1, 4));
}

TEST_CASE("Born rule for (Z x 1, 1 x Z) on the Bell state") {
    SSetPtr d2 = builtinSpace("delta", {2});
    CommutingTupleAssignment A(d2, 2);
    A.setEdge("01", "+ZI");
    A.setEdge("12", "+IZ");
    A.setEdge("02", "+ZZ");
    auto p = born(A, bellPhiPlus());
    auto cell = p.at(d2->byLabel("012"));
    CHECK(cell.at({0, 0}) == rat(1, 2));
    CHECK(cell.at({1, 1}) == rat(1, 2));
    CHECK(cell.at({0, 1}) == Rational(0));
    CHECK(cell.at({1, 0}) == Rational(0));
}

TEST_CASE("state contextuality: Bell on the Mermin square is strongly contextual") {
    auto A = merminStateDepAssignment();
    auto strong = isStateStronglyContextual(A, bellPhiPlus());
    CHECK(strong.strongly_contextual);
    auto verdict = isStateContextual(A, bellPhiPlus());
    CHECK(verdict.contextual);

    // The Boolean shadow is logically contextual (strong implies logical).
    CHECK(isLogicallyContextual(born(A, bellPhiPlus())));

    // A single triangle is never contextual, whatever the state.
    SSetPtr d2 = builtinSpace("delta", {2});
    CommutingTupleAssignment pair(d2, 2);
    pair.setEdge("01", "+XI");
    pair.setEdge("12", "+IX");
    pair.setEdge("02", "+XX");
    CHECK(!isStateContextual(pair, bellPhiPlus()).contextual);
    CHECK(!isStateContextual(pair, maximallyMixed(2)).contextual);
}

TEST_CASE("measurement contextuality of the refined Mermin square via the witness") {
    auto A = merminStateIndepAssignment();
    std::vector<DensityMatrix> states = {bellPhiPlus(), maximallyMixed(2),
                                         pureState({GaussianRational(Rational(1)),
                                                    GaussianRational(), GaussianRational(),
                                                    GaussianRational()})};
    auto report = isMeasurementContextual(A, "loop", states);
    CHECK(report.contextual_measurement);
    CHECK(report.witness.verdict == WitnessResult::Verdict::StronglyContextualByWitness);
    for (bool strong : report.state_strongly_contextual) CHECK(strong);
}

TEST_CASE("eigenvalue assignments: pinning the loop decides solvability") {
    auto A = merminStateIndepAssignment();
    const PresentedSSet& X = A.space();
    std::map<SimplexId, int> pin_one = {{X.byLabel("loop"), 1}};
    CHECK(!valueAssignmentExists(A, pin_one).exists);
    std::map<SimplexId, int> pin_zero = {{X.byLabel("loop"), 0}};
    auto ok = valueAssignmentExists(A, pin_zero);
    CHECK(ok.exists);
    REQUIRE(ok.assignment.has_value());
    CHECK(ok.assignment->map.isValid());

    // A single triangle admits assignments freely.
    SSetPtr d2 = builtinSpace("delta", {2});
    CommutingTupleAssignment pair(d2, 2);
    pair.setEdge("01", "+XI");
    pair.setEdge("12", "+IX");
    pair.setEdge("02", "+XX");
    CHECK(valueAssignmentExists(pair, {}).exists);
    CHECK(enumerateDeterministic(d2, OutcomeSpace::nerve(2)).size() == 4);
}

TEST_CASE("the marginal projector identities hold exactly") {
    auto m = spectralMeasurement({parsePauli("+XX"), parsePauli("+ZZ")});
    // Pi_A^a = sum_b Pi^{ab} is the spectral projector of the first
    // observable alone.
    auto ma = spectralMeasurement({parsePauli("+XX")});
    for (int a = 0; a < 2; ++a) {
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (int b = 0; b < 2; ++b) sum = sum + m.at({a, b});
        ComplexMatrix want = ma.at({a});
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) CHECK(sum(r, c) == want(r, c));
    }
    // Pi_C^c = sum_{a+b=c} Pi^{ab} matches the product observable.
    auto mc = spectralMeasurement({parsePauli("-YY")});
    for (int c = 0; c < 2; ++c) {
        ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
        for (int a = 0; a < 2; ++a) sum = sum + m.at({a, (c + a) % 2});
        ComplexMatrix want = mc.at({c});
        for (int r = 0; r < 4; ++r)
            for (int cc = 0; cc < 4; ++cc) CHECK(sum(r, cc) == want(r, cc));
    }
}

TEST_CASE("Born tables always pass the simplicial checks on fixture states") {
    auto A = merminStateDepAssignment();
    for (const DensityMatrix& rho :
         {bellPhiPlus(), maximallyMixed(2),
          pureState({GaussianRational(rat(3, 5)), GaussianRational(), GaussianRational(),
                     GaussianRational(rat(4, 5))})}) {
        auto p = born(A, rho);
        CHECK(p.check().empty());
    }
    auto B = merminStateIndepAssignment();
    CHECK(born(B, maximallyMixed(2)).check().empty());
}

TEST_CASE("the GHZ star contexts are commuting Pauli data") {
    auto contexts = merminStarContexts();
    REQUIRE(contexts.size() == 4);
    for (const auto& ctx : contexts) {
        std::vector<Pauli> tuple;
        for (const std::string& w : ctx) tuple.push_back(parsePauli(w));
        for (std::size_t i = 0; i < tuple.size(); ++i)
            for (std::size_t j = i + 1; j < tuple.size(); ++j)
                CHECK(pauliCommute(tuple[i], tuple[j]));
        CHECK_NOTHROW(spectralMeasurement(tuple));
    }
    // GHZ eigenvalues: the XYY-type products give -1, XXX gives +1.
    auto rho = ghz3();
    auto tr = [&](const Pauli& p) {
        GaussianRational t = traceOf(rho.rho * pauliMatrix(p));
        REQUIRE(t.isReal());
        return t.re;
    };
    CHECK(tr(parsePauli("+XYY")) == Rational(-1));
    CHECK(tr(parsePauli("+YXY")) == Rational(-1));
    CHECK(tr(parsePauli("+YYX")) == Rational(-1));
    CHECK(tr(parsePauli("+XXX")) == Rational(1));
}
