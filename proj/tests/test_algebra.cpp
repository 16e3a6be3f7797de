// Algebra axioms, constructors, and validation witnesses.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <homleib/algebra.hpp>

using namespace homleib;

TEST_CASE("two_dim_nilpotent satisfies both axioms") {
    Algebra L = two_dim_nilpotent();
    CHECK(L.dim() == 2);
    auto rep = L.validate();
    CHECK(rep.passed);
    CHECK(rep.violations.empty());
    // bracket table: only [e2,e2] = e1
    Vec v = L.bracket(L.basis(1), L.basis(1));
    CHECK(v[0] == 1);
    CHECK(v[1] == 0);
    CHECK(L.bracket(L.basis(0), L.basis(1)) == Vec{Rational(0), Rational(0)});
    // alpha acts by columns: alpha(e2) = e1 + e2
    Vec a = L.alpha(L.basis(1));
    CHECK(a[0] == 1);
    CHECK(a[1] == 1);
}

TEST_CASE("classical Leibniz examples with alpha = Id validate") {
    // [e1,e2] = e1, [e2,e1] = -e1 (a solvable 2-dim Leibniz algebra)
    Algebra r2 = leibniz(2, {{0, 1, 0, Rational(1)}, {1, 0, 0, Rational(-1)}});
    CHECK(r2.validate().passed);
    // [e1,e2] = e1, [e2,e2] = e1 (non skew-symmetric)
    Algebra lb2 = leibniz(2, {{0, 1, 0, Rational(1)}, {1, 1, 0, Rational(1)}});
    CHECK(lb2.validate().passed);
    // sl2 as a Leibniz algebra
    Algebra sl2 = leibniz(3, {{0, 1, 2, Rational(1)}, {1, 0, 2, Rational(-1)},
                              {2, 0, 0, Rational(2)}, {0, 2, 0, Rational(-2)},
                              {2, 1, 1, Rational(-2)}, {1, 2, 1, Rational(2)}});
    CHECK(sl2.validate().passed);
}

TEST_CASE("abelian algebras validate with any alpha") {
    CHECK(abelian(3).validate().passed);
    Mat A(2, 2);
    A.at(0, 0) = 2; A.at(0, 1) = 1; A.at(1, 1) = -1;
    CHECK(abelian_twisted(2, A).validate().passed);
}

TEST_CASE("validation reports a witness tuple for a broken axiom") {
    // [e2,e2] = e1 but alpha = diag(1,2): multiplicativity fails at (e2,e2)
    Mat A(2, 2);
    A.at(0, 0) = 1; A.at(1, 1) = 2;
    Algebra bad = make_algebra(2, {{1, 1, 0, Rational(1)}}, A);
    auto rep = bad.validate();
    REQUIRE_FALSE(rep.passed);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.axiom == "multiplicative" &&
            v.basis_indices == std::vector<std::size_t>{1, 1})
            found = true;
    CHECK(found);
}

TEST_CASE("yau twist of a validating algebra validates") {
    Algebra r2 = leibniz(2, {{0, 1, 0, Rational(1)}, {1, 0, 0, Rational(-1)}});
    Mat tw(2, 2);
    tw.at(0, 0) = 2; tw.at(1, 1) = 1;
    Algebra t = yau_twist(r2, tw);
    CHECK(t.validate().passed);
    // twisted bracket: [e1,e2]' = [2e1, e2] = 2e1
    Vec v = t.bracket(t.basis(0), t.basis(1));
    CHECK(v[0] == 2);
    CHECK(v[1] == 0);
    CHECK(t.alpha_matrix() == tw);
}

TEST_CASE("free truncated Leibniz algebra on one generator, depth 2") {
    auto [L, words] = free_truncated(1, 2);
    CHECK(L.dim() == 2);
    REQUIRE(words.size() == 2);
    CHECK(words[0] == std::vector<std::size_t>{0});
    CHECK(words[1] == std::vector<std::size_t>{0, 0});
    CHECK(L.validate().passed);
    // [x, x] = xx; every bracket into degree 3 truncates to zero
    Vec v = L.bracket(L.basis(0), L.basis(0));
    CHECK(v[0] == 0);
    CHECK(v[1] == 1);
    CHECK(L.bracket(L.basis(1), L.basis(0)) == Vec{Rational(0), Rational(0)});
    CHECK(L.bracket(L.basis(0), L.basis(1)) == Vec{Rational(0), Rational(0)});
}

TEST_CASE("free truncated algebra on two generators validates") {
    auto [L, words] = free_truncated(2, 2);
    CHECK(L.dim() == 6); // 2 words of length 1, 4 of length 2
    CHECK(L.validate().passed);
}

TEST_CASE("alpha powers are cached consistently") {
    Algebra L = two_dim_nilpotent();
    Mat A2 = L.alpha_power(2);
    CHECK(A2 == L.alpha_matrix() * L.alpha_matrix());
    CHECK(L.alpha_power(0) == Mat::identity(2));
    // alpha^3(e2) = 3 e1 + e2
    Vec v = L.alpha(L.basis(1), 3);
    CHECK(v[0] == 3);
    CHECK(v[1] == 1);
}
