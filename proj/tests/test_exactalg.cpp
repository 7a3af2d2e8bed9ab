#include "doctest.h"

#include <random>

#include "brute.hpp"
#include "subcubes/exactalg.hpp"

using namespace subcubes;

namespace {
const BiPoly n = BiPoly::n();
const BiPoly q = BiPoly::q();
}  // namespace

TEST_CASE("rational canonical form and parsing") {
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("-2/4") == Rational(-1, 2));
    CHECK_THROWS(Rational::parse("2/-4"));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(0, 5).denominator() == 1);
    CHECK(Rational(3, -6).numerator() == -1);
    CHECK(Rational(3, -6).denominator() == 2);
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("0.5"));
    CHECK_THROWS(Rational::parse(""));
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).str() == "2/3");
    CHECK(Rational(-4).str() == "-4");
}

TEST_CASE("polynomial arithmetic examples") {
    CHECK((q - 1) + 1 == q);
    CHECK(n * n == BiPoly::monomial(2, 0));
    CHECK((n + q).pow(0) == BiPoly(1));
    CHECK((q - q).is_zero());
    CHECK((n + 1) * (n - 1) == n * n - 1);
    CHECK(BiPoly::monomial(1, 2, Rational(3)).coeff(1, 2) == Rational(3));
    CHECK(BiPoly(0).is_zero());
}

TEST_CASE("evaluation at integer n") {
    CHECK((n * q / 8).eval_at(3) == Rational(3));
    CHECK(BiPoly(1).eval_at(5) == Rational(1));
    const BiPoly var1 = n * (n - 1) * q / 16 + 3 * n * q / 32;
    CHECK(var1.eval_at(2) == Rational(5, 4));
    // Same value straight from the 16 subsets of the square.
    const Rational m1 = brute::subset_moment(2, {1}), m2 = brute::subset_moment(2, {1, 1});
    CHECK(var1.eval_at(2) == m2 - m1 * m1);
    CHECK((n * q / 8).eval_at(3) == brute::subset_moment(3, {1}));
    CHECK(q.eval_at(0) == Rational(1));
}

TEST_CASE("binomial and falling-factorial polynomials") {
    CHECK(binom_poly(0) == BiPoly(1));
    CHECK(binom_poly(1) == n);
    CHECK(binom_poly(2) == (n * n - n) / 2);
    CHECK(falling_factorial_poly(0, 1) == q);
    CHECK(falling_factorial_poly(2, 1) == q / 4);
    CHECK(falling_factorial_poly(1, 2) == (q / 2) * (q / 2 - 1));
    CHECK(falling_factorial_poly(3, 4).degree_q() == 4);
    CHECK(falling_factorial_poly(3, 4).degree_n() == 0);

    for (unsigned a = 0; a <= 8; ++a)
        for (unsigned n0 = a; n0 <= 20; ++n0) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), n0, a);
            CHECK(binom_poly(a).eval_at(n0) == Rational(b));
        }
    for (unsigned a = 0; a <= 4; ++a)
        for (unsigned m = 1; m <= 4; ++m)
            for (unsigned n0 = a; n0 <= 8; ++n0) {
                mpz_class x = mpz_class(1) << (n0 - a), prod = 1;
                for (unsigned j = 0; j < m; ++j) prod *= x - j;
                CHECK(falling_factorial_poly(a, m).eval_at(n0) == Rational(prod));
            }
}

TEST_CASE("leading term") {
    const BiPoly moms = q * n * n * (q * q * n + 12 * q * n + 6 * q + 24 * n) / 512;
    auto lt = moms.leading_term();
    CHECK(lt.deg_q == 3);
    CHECK(lt.deg_n == 3);
    CHECK(lt.coeff == Rational(1, 512));
    lt = (3 * n.pow(3) * q / 64).leading_term();
    CHECK(lt.deg_q == 1);
    CHECK(lt.deg_n == 3);
    CHECK(lt.coeff == Rational(3, 64));
    // q dominates any power of n.
    lt = (n.pow(9) + q).leading_term();
    CHECK(lt.deg_q == 1);
    CHECK(lt.deg_n == 0);
    CHECK_THROWS_AS(BiPoly().leading_term(), std::domain_error);
}

TEST_CASE("rendering") {
    CHECK((n * q / 8).render(RenderFormat::plain) == "n*2^n/8");
    CHECK(BiPoly().render(RenderFormat::plain) == "0");
    CHECK((3 * n.pow(3) * q / 64).render(RenderFormat::plain) == "3*n^3*2^n/64");
    CHECK((q * q - q).render(RenderFormat::json) ==
          R"({"terms":[{"n":0,"q":2,"num":"1","den":"1"},{"n":0,"q":1,"num":"-1","den":"1"}]})");
    CHECK((q * q * n - 1).render(RenderFormat::plain) == "n*2^(2*n) - 1");
    const BiPoly P = n * q * q / 3 - 2 * n + 5;
    CHECK(P.render(RenderFormat::latex) == P.render(RenderFormat::latex));
    CHECK(!P.render(RenderFormat::maple).empty());
    CHECK(parse_render_format("maple") == RenderFormat::maple);
    CHECK_THROWS(parse_render_format("yaml"));
}

TEST_CASE("ring laws on random polynomials") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        const BiPoly A = brute::random_poly(rng), B = brute::random_poly(rng), C = brute::random_poly(rng);
        CHECK((A + B) + C == A + (B + C));
        CHECK((A * B) * C == A * (B * C));
        CHECK(A * (B + C) == A * B + A * C);
        CHECK(A + B == B + A);
        CHECK(A * B == B * A);
        CHECK(A - A == BiPoly());
        CHECK(A * 1 == A);
        CHECK(A.pow(3) == A * A * A);
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        const BiPoly A = brute::random_poly(rng), B = brute::random_poly(rng);
        for (unsigned n0 = 0; n0 <= 12; ++n0) {
            CHECK((A * B).eval_at(n0) == A.eval_at(n0) * B.eval_at(n0));
            CHECK((A + B).eval_at(n0) == A.eval_at(n0) + B.eval_at(n0));
        }
    }
}

TEST_CASE("json round trip") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 60; ++t) {
        const BiPoly A = brute::random_poly(rng, 6, 8) * Rational(mpz_class("123456789012345678901"), 7);
        CHECK(BiPoly::from_json(A.render(RenderFormat::json)) == A);
    }
    CHECK(BiPoly::from_json(R"({"terms":[]})").is_zero());
    CHECK_THROWS(BiPoly::from_json(R"({"terms":[{"n":0,"q":0,"num":"1","den":"0"}]})"));
}
