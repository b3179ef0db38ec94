#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simpctx/builtins.h"
#include "support.h"

using namespace simpctx;
using namespace simpctx::testing;

TEST_CASE("nerve faces and degeneracies in low dimensions") {
    OutcomeSpace Y = OutcomeSpace::nerve(2);
    CHECK(Y.face({1, 1}, 0) == Outcome{1});
    CHECK(Y.face({1, 1}, 1) == Outcome{0});  // 1+1 mod 2
    CHECK(Y.face({1, 1}, 2) == Outcome{1});
    CHECK(Y.degeneracy({1}, 0) == Outcome{0, 1});
    CHECK(Y.degeneracy({1}, 1) == Outcome{1, 0});
    CHECK(Y.countSimplices(3) == 8);

    OutcomeSpace Y3 = OutcomeSpace::nerve(3);
    CHECK(Y3.face({2, 2}, 1) == Outcome{1});  // 2+2 mod 3
}

TEST_CASE("pushforward of distributions along face maps") {
    OutcomeSpace Y = OutcomeSpace::nerve(2);
    // d1 of (1/2, 0, 0, 1/2) concentrates on outcome 0.
    auto p = pairDist(rat(1, 2), Rational(0), Rational(0), rat(1, 2));
    auto d1 = faceDist(Y, 1, p);
    CHECK(d1.at({0}) == Rational(1));
    CHECK(d1.at({1}) == Rational(0));
    // Pushforward along the identity function is the identity.
    auto same = pushforwardDist<Rational>([](const Outcome& t) { return t; }, p);
    CHECK(same == p);
    // d0 of the uniform table is (1/2, 1/2).
    auto u = pairDist(rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4));
    auto d0 = faceDist(Y, 0, u);
    CHECK(d0.at({0}) == rat(1, 2));
    CHECK(d0.at({1}) == rat(1, 2));
}

TEST_CASE("marginals: edge marginal and degeneracy sections") {
    OutcomeSpace Y = OutcomeSpace::nerve(2);
    // p_x^0 = p^00 + p^01 is the d2 marginal.
    auto p = pairDist(rat(1, 3), rat(1, 6), rat(1, 4), rat(1, 4));
    auto d2 = faceDist(Y, 2, p);
    CHECK(d2.at({0}) == rat(1, 3) + rat(1, 6));
    // s0 (p^0, p^1) = (p^0, p^1, 0, 0).
    auto e = edgeDist(rat(2, 5), rat(3, 5));
    auto s0 = degeneracyDist(Y, 0, e);
    CHECK(densePair(s0) == std::array<Rational, 4>{rat(2, 5), rat(3, 5), Rational(0), Rational(0)});
    auto s1 = degeneracyDist(Y, 1, e);
    CHECK(densePair(s1) == std::array<Rational, 4>{rat(2, 5), Rational(0), rat(3, 5), Rational(0)});
    // The empty word is the identity marginal.
    SSetPtr t0 = builtinSpace("punctured_torus");
    auto box = boxDistribution(t0, prBoxTable());
    SimplexId sigma = t0->byLabel("sigma_y0x0");
    CHECK(marginal(box, sigma, OperatorWord::identity()) == box.at(sigma));
}

TEST_CASE("the PR box is nonsignaling and a corrupted table is caught") {
    SSetPtr t0 = builtinSpace("punctured_torus");
    auto box = boxDistribution(t0, prBoxTable());
    CHECK(box.check().empty());

    SimplicialDistribution<Rational> bad = box;
    bad.set(t0->byLabel("sigma_y0x0"), pairDist(Rational(1), Rational(0), Rational(0), Rational(0)));
    CHECK(!bad.check().empty());

    // Deterministic tables always pass.
    auto det = boxDistribution(t0, vertexBoxTable(0, 1, 1, 0));
    CHECK(det.check().empty());
}

TEST_CASE("semiring map to the Boolean shadow") {
    SSetPtr t0 = builtinSpace("punctured_torus");
    auto box = boxDistribution(t0, prBoxTable());
    auto shadow = booleanShadow(box);
    // PR contexts have support {00, 11} except the x1y1 one with {01, 10}.
    auto cell = shadow.at(t0->byLabel("sigma_y0x0"));
    CHECK(cell.at({0, 0}) == Bool01(true));
    CHECK(cell.at({1, 1}) == Bool01(true));
    CHECK(cell.at({0, 1}) == Bool01(false));
    auto cell2 = shadow.at(t0->byLabel("sigma_x1y1"));
    CHECK(cell2.at({0, 1}) == Bool01(true));
    CHECK(cell2.at({0, 0}) == Bool01(false));
    CHECK(shadow.check().empty());

    // Identity homomorphism changes nothing.
    auto same = semiringMap<Rational>(IdentityHomomorphism{}, box);
    CHECK(same.at(t0->byLabel("sigma_y0x0")) == box.at(t0->byLabel("sigma_y0x0")));

    // Uniform table maps to all-ones support.
    auto uniform = boxDistribution(t0, [](int, int, int, int) { return rat(1, 4); });
    auto ushadow = booleanShadow(uniform);
    for (const Outcome& theta : OutcomeSpace::nerve(2).simplices(2))
        CHECK(ushadow.at(t0->byLabel("sigma_y0x0")).at(theta) == Bool01(true));
}

TEST_CASE("the semiring axioms hold on sampled rationals and booleans") {
    std::mt19937 rng(3);
    std::vector<Rational> samples;
    for (int k = 0; k < 8; ++k) samples.push_back(randomRational(rng));
    for (const Rational& a : samples)
        for (const Rational& b : samples)
            for (const Rational& c : samples) {
                CHECK(SemiringTraits<Rational>::add(a, b) == SemiringTraits<Rational>::add(b, a));
                CHECK(SemiringTraits<Rational>::mul(a, SemiringTraits<Rational>::add(b, c)) ==
                      SemiringTraits<Rational>::add(SemiringTraits<Rational>::mul(a, b),
                                                    SemiringTraits<Rational>::mul(a, c)));
            }
    CHECK(checkHomomorphism<SupportHomomorphism, Rational, Bool01>(SupportHomomorphism{}, samples));
}

TEST_CASE("circle outcome space and the embedding into the nerve") {
    OutcomeSpace S = OutcomeSpace::circle(2);
    CHECK(S.countSimplices(2) == 3);
    CHECK(S.simplices(2) ==
          std::vector<Outcome>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(S.contains({1, 1}, 2) == false);

    // (p^1, p^2) = (1/4, 1/4) maps to (1/2, 1/4, 1/4, 0).
    auto nerve_dist = circleTupleToNerve({rat(1, 4), rat(1, 4)});
    CHECK(densePair(nerve_dist) ==
          std::array<Rational, 4>{rat(1, 2), rat(1, 4), rat(1, 4), Rational(0)});

    // The all-zero tuple is the delta at (0, ..., 0).
    auto zero = circleTupleToNerve({Rational(0), Rational(0), Rational(0)});
    CHECK(zero.at({0, 0, 0}) == Rational(1));
    CHECK(zero.support().size() == 1);

    // Dimension-3 tuple (1/3, 1/3, 1/3): mass on the three unit tuples.
    auto thirds = circleTupleToNerve({rat(1, 3), rat(1, 3), rat(1, 3)});
    CHECK(thirds.at({1, 0, 0}) == rat(1, 3));
    CHECK(thirds.at({0, 1, 0}) == rat(1, 3));
    CHECK(thirds.at({0, 0, 1}) == rat(1, 3));
    CHECK(thirds.at({0, 0, 0}) == Rational(0));

    // Mass never leaves the n+1 circle simplices.
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 4;
        std::vector<Rational> tuple;
        Rational total(0);
        for (int k = 0; k < n; ++k) {
            Rational v = randomRational(rng, 16) / n;
            tuple.push_back(v);
            total += v;
        }
        if (total > 1) continue;
        auto dist = circleTupleToNerve(tuple);
        OutcomeSpace Sc = OutcomeSpace::circle(2);
        for (const auto& [theta, value] : dist.support()) CHECK(Sc.contains(theta, n));
    }
}

TEST_CASE("circle-valued simplicial distributions embed into nerve ones") {
    // On the punctured torus with circle outcomes, a distribution is a
    // 4-tuple of edge values; its image is the q-table with zero mass on 11.
    SSetPtr t0 = builtinSpace("punctured_torus");
    Rational px0(1, 3), px1(1, 5), py0(1, 7), py1(2, 7);
    auto q = [&](int i, int j, int a, int b) -> Rational {
        Rational pi = i == 0 ? px0 : px1;
        Rational pj = j == 0 ? py0 : py1;
        if (a == 1 && b == 1) return Rational(0);
        if (a == 1 && b == 0) return pi;
        if (a == 0 && b == 1) return pj;
        return Rational(1) - pi - pj;
    };
    // Cells carry (y, x) order on the y-first triangles; boxCells handles it.
    auto cells = boxCells(*t0, q);
    std::vector<std::string> report;
    auto pS = assembleDistribution(t0, OutcomeSpace::circle(2), cells, &report);
    CHECK(report.empty());
    CHECK(pS.check().empty());

    auto pN = circleEmbed(pS);
    CHECK(pN.outcomes().kind() == OutcomeSpace::Kind::Nerve);
    CHECK(pN.check().empty());
    auto tup = densePair(pN.at(t0->byLabel("sigma_y0x0")));
    CHECK(tup[0] == Rational(1) - px0 - py0);
    CHECK(tup[3] == Rational(0));
}

TEST_CASE("functoriality of the distribution functor") {
    std::mt19937 rng(17);
    OutcomeSpace Y = OutcomeSpace::nerve(3);
    for (int trial = 0; trial < 60; ++trial) {
        // A random normalized distribution on dim-2 nerve(3) outcomes.
        Distribution<Rational> p;
        Rational left(1);
        auto sims = Y.simplices(2);
        for (std::size_t k = 0; k + 1 < sims.size(); ++k) {
            Rational v = randomRational(rng, 12);
            if (v > left) v = left;
            p.add(sims[k], v);
            left -= v;
        }
        p.add(sims.back(), left);
        REQUIRE(p.isNormalized());
        // Pushing forward along d0 then d0 equals the composed word.
        auto two_steps = faceDist(Y, 0, faceDist(Y, 1, p));
        auto composed = pushforwardWord(Y, composeWords(OperatorWord::face(0), OperatorWord::face(1)), p);
        CHECK(two_steps == composed);
    }
}

TEST_CASE("all marginal routes to a common face agree on valid distributions") {
    std::mt19937 rng(31);
    SSetPtr t0 = builtinSpace("punctured_torus");
    for (int trial = 0; trial < 25; ++trial) {
        auto box = boxDistribution(t0, randomBoxTable(rng));
        for (int id = 0; id < t0->count(2); ++id) {
            // d_i d_j routes to the vertices must agree pairwise.
            for (int j = 1; j <= 2; ++j)
                for (int i = 0; i < j; ++i) {
                    auto left = faceDist(box.outcomes(), i, faceDist(box.outcomes(), j, box.at({2, id})));
                    auto right =
                        faceDist(box.outcomes(), j - 1, faceDist(box.outcomes(), i, box.at({2, id})));
                    CHECK(left == right);
                }
        }
    }
}

TEST_CASE("semiring change commutes with marginals") {
    std::mt19937 rng(41);
    SSetPtr t0 = builtinSpace("punctured_torus");
    OutcomeSpace Y = OutcomeSpace::nerve(2);
    for (int trial = 0; trial < 25; ++trial) {
        auto box = boxDistribution(t0, randomBoxTable(rng));
        for (int id = 0; id < t0->count(2); ++id)
            for (int i = 0; i <= 2; ++i) {
                auto route1 = mapValues<Rational, Bool01>(SupportHomomorphism{},
                                                          faceDist(Y, i, box.at({2, id})));
                auto route2 = faceDist(
                    Y, i, mapValues<Rational, Bool01>(SupportHomomorphism{}, box.at({2, id})));
                CHECK(route1 == route2);
            }
    }
}

TEST_CASE("discrete outcome simplices") {
    OutcomeSpace D = OutcomeSpace::discretePower(2);
    CHECK(D.countSimplices(1) == 4);
    CHECK(D.face({1, 0}, 0) == Outcome{0});
    CHECK(D.face({1, 0}, 1) == Outcome{1});
    CHECK(D.degeneracy({1, 0}, 0) == Outcome{1, 1, 0});
    CHECK(D.degeneracy({1, 0}, 1) == Outcome{1, 0, 0});
}

TEST_CASE("distribution values must be admissible") {
    Distribution<Rational> p;
    CHECK_THROWS_AS(p.add({0}, Rational(-1)), DistributionError);
    p.add({0}, rat(1, 2));
    p.add({1}, rat(1, 2));
    CHECK(p.isNormalized());
}

TEST_CASE("circle-valued tables reject mass outside the circle") {
    SSetPtr t0 = builtinSpace("punctured_torus");
    auto cells = boxCells(*t0, prBoxTable());  // PR puts mass on (1,1)
    std::vector<std::string> report;
    auto p = assembleDistribution(t0, OutcomeSpace::circle(2), cells, &report);
    auto violations = p.check();
    bool flagged = false;
    for (const auto& v : violations) flagged = flagged || v.face == -1;
    CHECK(flagged);
}

TEST_CASE("signaling tables are rejected during assembly") {
    // Different x0 marginals in the two contexts containing x0.
    SSetPtr t0 = builtinSpace("punctured_torus");
    auto cells = boxCells(*t0, prBoxTable());
    cells[t0->byLabel("sigma_x0y1")] =
        pairDist(Rational(1), Rational(0), Rational(0), Rational(0));
    std::vector<std::string> report;
    auto p = assembleDistribution(t0, OutcomeSpace::nerve(2), cells, &report);
    CHECK((!report.empty() || !p.check().empty()));
}
