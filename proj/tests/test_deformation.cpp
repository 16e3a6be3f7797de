// Truncated deformations: verification, infinitesimals, obstruction theory,
// extension, gauge equivalence, reduction, and rigidity verdicts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homleib/deformation.hpp>

#include "support/corpus.hpp"

#include <random>

using namespace homleib;
using namespace testsupport;

namespace {

Mat random_mat(std::size_t d, std::mt19937_64& rng, int span = 2) {
    std::uniform_int_distribution<int> dist(-span, span);
    Mat m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m.at(i, j) = dist(rng);
    return m;
}

// Random element of the degree-2 kernel (coefficients drawn once per vector).
std::optional<PairCochain> random_2cocycle(const Algebra& L, std::mt19937_64& rng) {
    auto ker = nullspace(out_matrix(L, 2));
    if (ker.empty()) return std::nullopt;
    std::uniform_int_distribution<int> dist(-2, 2);
    Vec acc(ker[0].size(), Rational(0));
    bool nonzero = false;
    for (const auto& b : ker) {
        int c = dist(rng);
        if (c == 0) continue;
        nonzero = true;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += Rational(c) * b[i];
    }
    if (!nonzero) acc = ker[0];
    return unflatten(L.dim(), 2, acc);
}

TruncatedDeformation seed_deformation(const Algebra& L, const PairCochain& p,
                                      std::size_t order = 1) {
    std::vector<Cochain> m(order, Cochain(L.dim(), 2));
    std::vector<Mat> a(order, Mat(L.dim(), L.dim()));
    m[0] = p.gamma;
    a[0] = cochain_to_matrix(p.alpha);
    return TruncatedDeformation(L, std::move(m), std::move(a));
}

GaugeTransform random_gauge(std::size_t d, std::size_t order, std::mt19937_64& rng) {
    std::vector<Mat> jets;
    for (std::size_t s = 0; s < order; ++s) jets.push_back(random_mat(d, rng));
    return GaugeTransform(d, std::move(jets));
}

// Left-hand sides of the two defining equations at order s, as a degree-3 pair.
PairCochain defect(const Algebra& L, const TruncatedDeformation& D, std::size_t s) {
    std::size_t d = L.dim();
    PairCochain out = PairCochain::zero(d, 3);
    for_each_tuple(d, 3, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]), z = L.basis(tup[2]);
        Vec tot(d, Rational(0));
        for (std::size_t i = 0; i <= s; ++i)
            for (std::size_t j = 0; i + j <= s; ++j) {
                Vec v = deformation_associator(D.m(i), D.a(j), D.m(s - i - j), x, y, z);
                for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
            }
        for (std::size_t k = 0; k < d; ++k)
            if (!tot[k].is_zero()) out.gamma.at(k, tup) = tot[k];
    });
    for_each_tuple(d, 2, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]);
        Vec tot(d, Rational(0));
        for (std::size_t i = 0; i <= s; ++i)
            for (std::size_t j = 0; i + j <= s; ++j) {
                Vec v = D.m(i).eval({D.a(j) * x, D.a(s - i - j) * y});
                for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
            }
        for (std::size_t i = 0; i <= s; ++i) {
            Vec v = D.a(i) * D.m(s - i).eval({x, y});
            for (std::size_t t = 0; t < d; ++t) tot[t] -= v[t];
        }
        for (std::size_t k = 0; k < d; ++k)
            if (!tot[k].is_zero()) out.alpha.at(k, tup) = tot[k];
    });
    return out;
}

} // namespace

TEST_CASE("the trivial deformation verifies and extends by zero") {
    for (const auto& [name, L] : corpus_dim2()) {
        auto D = TruncatedDeformation::trivial(L, 3);
        INFO(name);
        CHECK(verify(L, D).passed);
        auto obs = obstruction(L, D);
        CHECK(obs.is_zero());
        auto ext = extend(L, D);
        REQUIRE(ext.extended.has_value());
        CHECK(ext.extended->order() == 4);
        CHECK(ext.extended->m(4).is_zero());
        CHECK(verify(L, *ext.extended).passed);
    }
}

TEST_CASE("gauge inverse jets follow the alternating power law") {
    std::mt19937_64 rng(11);
    Mat psi1 = random_mat(2, rng);
    GaugeTransform G(2, {psi1});
    GaugeTransform Ginv = G.inverse(4);
    Mat p = psi1;
    for (std::size_t s = 1; s <= 4; ++s) {
        Rational sign((s % 2 == 0) ? 1 : -1);
        CHECK(Ginv.psi(s) == p * sign);
        p = p * psi1;
    }
    // composing with the inverse gives the identity transform through order 4
    for (std::size_t s = 1; s <= 4; ++s) {
        Mat acc(2, 2);
        for (std::size_t i = 0; i <= s; ++i) acc = acc + G.psi(i) * Ginv.psi(s - i);
        CHECK(acc == Mat(2, 2));
    }
    // the inverse is involutive through the truncation order
    GaugeTransform Gback = Ginv.inverse(4);
    CHECK(Gback.psi(1) == G.psi(1));
    for (std::size_t s = 2; s <= 4; ++s) CHECK(Gback.psi(s) == G.psi(s));
}

TEST_CASE("gauge images of the trivial deformation verify and transport back") {
    std::mt19937_64 rng(23);
    for (const auto& [name, L] : corpus_dim2()) {
        GaugeTransform G = random_gauge(L.dim(), 4, rng);
        auto Dg = apply_gauge(L, TruncatedDeformation::trivial(L, 4), G);
        INFO(name);
        CHECK(verify(L, Dg).passed);
        auto Dback = apply_gauge(L, Dg, G.inverse(4));
        for (std::size_t s = 1; s <= 4; ++s) {
            CHECK(Dback.m(s).is_zero());
            CHECK(Dback.a(s).is_zero());
        }
    }
}

TEST_CASE("order-1 gauge jets are differentials of the gauge generator") {
    std::mt19937_64 rng(37);
    for (const auto& [name, L] : corpus_dim2()) {
        Mat psi = random_mat(L.dim(), rng);
        GaugeTransform G(L.dim(), {psi});
        auto Dg = apply_gauge(L, TruncatedDeformation::trivial(L, 1), G);
        Cochain psi_c = matrix_to_cochain(psi);
        INFO(name);
        CHECK(Dg.m(1) == d_gamma_gamma(L, psi_c));
        CHECK(matrix_to_cochain(Dg.a(1)) == d_gamma_alpha(L, psi_c));
    }
}

TEST_CASE("2-cocycles seed verified order-1 deformations; non-cocycles fail") {
    std::mt19937_64 rng(41);
    for (const auto& [name, L] : corpus_dim2()) {
        auto p = random_2cocycle(L, rng);
        REQUIRE(p.has_value());
        auto D = seed_deformation(L, *p);
        INFO(name);
        CHECK(verify(L, D).passed);
        // a seed that is not a cocycle must fail with an order-1 witness
        PairCochain bad = PairCochain::zero(L.dim(), 2);
        bad.gamma = random_cochain(L.dim(), 2, 555);
        bad.alpha = random_cochain(L.dim(), 1, 556);
        if (!is_cocycle(L, bad)) {
            auto rep = verify(L, seed_deformation(L, bad));
            REQUIRE_FALSE(rep.passed);
            CHECK(rep.failures.front().order == 1);
        }
    }
}

TEST_CASE("infinitesimals of verified deformations are 2-cocycles") {
    std::mt19937_64 rng(43);
    for (const auto& [name, L] : corpus_dim2()) {
        GaugeTransform G = random_gauge(L.dim(), 3, rng);
        auto Dg = apply_gauge(L, TruncatedDeformation::trivial(L, 3), G);
        auto inf = infinitesimal(Dg);
        if (!inf) continue; // gauge may act trivially (abelian with alpha = Id)
        INFO(name);
        CHECK(is_cocycle(L, inf->second));
    }
}

TEST_CASE("the extension defect decomposes through the obstruction class") {
    // For a verified order-n deformation extended by candidate jets (m', a'),
    // the order-(n+1) equation defects are
    //   defect_gamma = d(m',a')_gamma - Obs_gamma
    //   defect_alpha = Obs_alpha - d(m',a')_alpha.
    std::mt19937_64 rng(47);
    for (const auto& [name, L] : std::vector<NamedAlgebra>{
             {"nilp2", nilp2()}, {"r2", r2()}, {"tw2", tw2()}, {"abelian2", ab2()}}) {
        std::size_t d = L.dim();
        for (std::size_t n = 1; n <= 2; ++n) {
            GaugeTransform G = random_gauge(d, n, rng);
            auto Dfull = apply_gauge(L, TruncatedDeformation::trivial(L, n), G);
            auto obs = obstruction(L, Dfull);
            // candidate jets
            PairCochain cand = PairCochain::zero(d, 2);
            cand.gamma = random_cochain(d, 2, 900 + 10 * n);
            cand.alpha = random_cochain(d, 1, 901 + 10 * n);
            auto m_jets = Dfull.m_jets();
            auto a_jets = Dfull.a_jets();
            m_jets.push_back(cand.gamma);
            a_jets.push_back(cochain_to_matrix(cand.alpha));
            TruncatedDeformation Dext(L, std::move(m_jets), std::move(a_jets));
            PairCochain df = defect(L, Dext, n + 1);
            PairCochain dcand = differential(L, cand);
            INFO(name, " order ", n);
            CHECK(df.gamma == dcand.gamma - obs.cochain.gamma);
            CHECK(df.alpha == obs.cochain.alpha - dcand.alpha);
        }
    }
}

TEST_CASE("obstruction of an abelian order-1 deformation matches hand oracles") {
    std::mt19937_64 rng(53);
    Algebra L = ab2();
    Cochain m1 = random_cochain(2, 2, 601, 3);
    Mat a1 = random_mat(2, rng);
    TruncatedDeformation D(L, {m1}, {a1});
    REQUIRE(verify(L, D).passed); // abelian base: order-1 equations are vacuous
    auto obs = obstruction(L, D);
    CHECK(obs.order == 1);
    for_each_tuple(2, 3, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]), z = L.basis(tup[2]);
        Vec v = deformation_associator(m1, Mat::identity(2), m1, x, y, z);
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(obs.cochain.gamma.at(k, tup) == -v[k]);
    });
    for_each_tuple(2, 2, [&](const std::vector<std::size_t>& tup) {
        Vec x = L.basis(tup[0]), y = L.basis(tup[1]);
        Vec t1 = m1.eval({a1 * x, y});
        Vec t2 = m1.eval({x, a1 * y});
        Vec t3 = a1 * m1.eval({x, y});
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(obs.cochain.alpha.at(k, tup) == t1[k] + t2[k] - t3[k]);
    });
}

TEST_CASE("obstruction index enumeration covers boundary triples") {
    // Independent three-loop enumeration with an explicit i+j+k filter; the
    // dropped-triple failure mode shows up on bases with alpha != Id.
    std::mt19937_64 rng(59);
    for (const auto& [name, L] : std::vector<NamedAlgebra>{{"nilp2", nilp2()},
                                                           {"tw2", tw2()}}) {
        std::size_t d = L.dim(), n = 2;
        GaugeTransform G = random_gauge(d, n, rng);
        auto D = apply_gauge(L, TruncatedDeformation::trivial(L, n), G);
        auto obs = obstruction(L, D);
        PairCochain brute = PairCochain::zero(d, 3);
        for_each_tuple(d, 3, [&](const std::vector<std::size_t>& tup) {
            Vec x = L.basis(tup[0]), y = L.basis(tup[1]), z = L.basis(tup[2]);
            Vec tot(d, Rational(0));
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = 0; j <= n; ++j)
                    for (std::size_t k = 0; k <= n; ++k) {
                        if (i + j + k != n + 1) continue;
                        Vec v = deformation_associator(D.m(i), D.a(j), D.m(k), x, y, z);
                        for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
                    }
            for (std::size_t k = 0; k < d; ++k) brute.gamma.at(k, tup) = -tot[k];
        });
        for_each_tuple(d, 2, [&](const std::vector<std::size_t>& tup) {
            Vec x = L.basis(tup[0]), y = L.basis(tup[1]);
            Vec tot(d, Rational(0));
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = 0; j <= n; ++j)
                    for (std::size_t k = 0; k <= n; ++k) {
                        if (i + j + k != n + 1) continue;
                        Vec v = D.m(i).eval({D.a(j) * x, D.a(k) * y});
                        for (std::size_t t = 0; t < d; ++t) tot[t] += v[t];
                    }
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = 1; j <= n; ++j) {
                    if (i + j != n + 1) continue;
                    Vec v = D.a(i) * D.m(j).eval({x, y});
                    for (std::size_t t = 0; t < d; ++t) tot[t] -= v[t];
                }
            for (std::size_t k = 0; k < d; ++k) brute.alpha.at(k, tup) = tot[k];
        });
        INFO(name);
        CHECK(obs.cochain == brute);
    }
}

TEST_CASE("each truncated gauge image extends one step and re-verifies") {
    std::mt19937_64 rng(61);
    for (const auto& [name, L] : corpus_dim2()) {
        GaugeTransform G = random_gauge(L.dim(), 4, rng);
        auto Dg = apply_gauge(L, TruncatedDeformation::trivial(L, 4), G);
        for (std::size_t n = 1; n <= 3; ++n) {
            auto m = Dg.m_jets();
            auto a = Dg.a_jets();
            m.resize(n, Cochain(L.dim(), 2));
            a.resize(n, Mat(L.dim(), L.dim()));
            TruncatedDeformation Dn(L, std::move(m), std::move(a));
            auto ext = extend(L, Dn);
            INFO(name, " order ", n);
            REQUIRE(ext.extended.has_value());
            CHECK(ext.extended->order() == n + 1);
            CHECK(verify(L, *ext.extended).passed);
        }
    }
}

TEST_CASE("cocycle-seeded chains on vanishing-betti3 bases reach order 4") {
    std::mt19937_64 rng(67);
    for (const auto& [name, L] : std::vector<NamedAlgebra>{
             {"r2", r2()}, {"lb2", lb2()}, {"tw2", tw2()}}) {
        auto p = random_2cocycle(L, rng);
        REQUIRE(p.has_value());
        TruncatedDeformation D = seed_deformation(L, *p);
        REQUIRE(verify(L, D).passed);
        for (std::size_t step = 0; step < 3; ++step) {
            auto obs = obstruction(L, D);
            // every obstruction class is a 3-cocycle
            CHECK(is_cocycle(L, obs.cochain));
            auto ext = extend(L, D);
            INFO(name, " step ", step);
            REQUIRE(ext.extended.has_value());
            CHECK(verify(L, *ext.extended).passed);
            D = *ext.extended;
        }
        CHECK(D.order() == 4);
    }
}

TEST_CASE("particular chains may hit genuine obstructions, never break") {
    std::mt19937_64 rng(71);
    Algebra L = nilp2();
    GaugeTransform G = random_gauge(2, 1, rng);
    auto D1 = apply_gauge(L, TruncatedDeformation::trivial(L, 1), G);
    TruncatedDeformation D = D1;
    std::string outcome = "extended to order 4";
    while (D.order() < 4) {
        auto ext = extend(L, D);
        if (!ext.extended) {
            // legitimate halt: the obstruction class must be a noncobounding cocycle
            CHECK(is_cocycle(L, ext.obstruction_class.cochain));
            CHECK_FALSE(is_coboundary(L, ext.obstruction_class.cochain));
            outcome = "obstructed at order " + std::to_string(D.order());
            break;
        }
        REQUIRE(verify(L, *ext.extended).passed);
        D = *ext.extended;
    }
    MESSAGE("chain outcome: ", outcome);
}

TEST_CASE("reduce: fixpoint, full reduction of gauge images, irreducibility") {
    std::mt19937_64 rng(73);
    // trivial is a fixpoint
    Algebra P = nilp2();
    auto r0 = reduce(P, TruncatedDeformation::trivial(P, 3));
    CHECK(r0.verdict == "trivial");
    CHECK(r0.steps.empty());
    // gauge images reduce back to trivial
    for (const auto& [name, L] : std::vector<NamedAlgebra>{
             {"nilp2", nilp2()}, {"r2", r2()}, {"tw2", tw2()}}) {
        GaugeTransform G = random_gauge(L.dim(), 4, rng);
        auto Dg = apply_gauge(L, TruncatedDeformation::trivial(L, 4), G);
        auto rr = reduce(L, Dg);
        INFO(name);
        CHECK(rr.verdict == "trivial");
        for (std::size_t s = 1; s <= 4; ++s) {
            CHECK(rr.deformation.m(s).is_zero());
            CHECK(rr.deformation.a(s).is_zero());
        }
    }
    // a non-coboundary cocycle seed stops reduction immediately
    Algebra L = r2();
    auto ker = nullspace(out_matrix(L, 2));
    std::optional<PairCochain> seed;
    for (const auto& v : ker) {
        PairCochain p = unflatten(2, 2, v);
        if (!is_coboundary(L, p)) { seed = p; break; }
    }
    REQUIRE(seed.has_value());
    auto rr = reduce(L, seed_deformation(L, *seed, 2));
    CHECK(rr.verdict == "irreducible");
    CHECK(rr.irreducible_order == 1);
    CHECK(rr.steps.empty());
}

TEST_CASE("gauge-related deformations have cohomologous infinitesimals") {
    std::mt19937_64 rng(79);
    for (const auto& [name, L] : std::vector<NamedAlgebra>{
             {"nilp2", nilp2()}, {"r2", r2()}, {"tw2", tw2()}}) {
        auto p = random_2cocycle(L, rng);
        REQUIRE(p.has_value());
        auto D = seed_deformation(L, *p);
        REQUIRE(verify(L, D).passed);
        GaugeTransform G = random_gauge(L.dim(), 1, rng);
        auto Dg = apply_gauge(L, D, G);
        CHECK(verify(L, Dg).passed);
        auto i1 = infinitesimal(D);
        auto i2 = infinitesimal(Dg);
        REQUIRE(i1.has_value());
        if (!i2.has_value()) continue; // fully gauged away: cocycle was a coboundary
        if (i1->first != i2->first) continue;
        auto wit = cohomologous(L, i1->second, i2->second);
        INFO(name);
        CHECK(wit.has_value());
    }
}

TEST_CASE("rigidity verdicts cover all three branches") {
    auto rep = rigidity(nilp2());
    CHECK(rep.betti2 == 2);
    CHECK(rep.betti3 == 2);
    CHECK(rep.verdict == "inconclusive");
    rep = rigidity(ab2());
    CHECK(rep.betti2 == 12);
    CHECK(rep.betti3 == 24);
    CHECK(rep.verdict == "inconclusive");
    rep = rigidity(r2());
    CHECK(rep.betti2 == 2);
    CHECK(rep.betti3 == 0);
    CHECK(rep.verdict == "all 2-cocycles unobstructed");
    rep = rigidity(lb2());
    CHECK(rep.betti2 == 1);
    CHECK(rep.betti3 == 0);
    CHECK(rep.verdict == "all 2-cocycles unobstructed");
    // the rigid branch of the verdict function itself
    CHECK(rigidity_verdict(0, 5) == "rigid");
    CHECK(rigidity_verdict(0, 0) == "rigid");
}

TEST_CASE("deformation constructor rejects malformed jets") {
    Algebra L = nilp2();
    CHECK_THROWS_AS(TruncatedDeformation(L, {Cochain(2, 2)}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(TruncatedDeformation(L, {Cochain(3, 2)}, {Mat(2, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(TruncatedDeformation(L, {Cochain(2, 3)}, {Mat(2, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(GaugeTransform(2, {Mat(3, 3)}), std::invalid_argument);
}
