#pragma once
// Exact rationals and bivariate polynomials in (n, q), where q stands for 2^n.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace subcubes {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}
    Rational(int v) : value_(v) {}
    Rational(const mpz_class& v) : value_(v) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

    /// Parses "num" or "num/den" (decimal, optional leading '-').
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational pow(unsigned e) const;
    /// 2^e for any integer e.
    static Rational pow2(long e);

    double to_double() const { return value_.get_d(); }
    /// "num" when the denominator is 1, "num/den" otherwise.
    std::string str() const;

private:
    mpq_class value_{0};
};

/// Exponent pair of n^deg_n * q^deg_q. Ordered by (deg_q, deg_n), the asymptotic dominance order.
struct Monomial {
    int deg_n = 0;
    int deg_q = 0;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.deg_q <=> b.deg_q; c != 0) return c;
        return a.deg_n <=> b.deg_n;
    }
};

enum class RenderFormat { plain, latex, maple, json };

struct LeadingTerm {
    int deg_q;
    int deg_n;
    Rational coeff;
};

/// Polynomial sum c_{i,j} n^i q^j over the rationals, with q = 2^n. Zero coefficients are never stored,
/// so equality is structural.
class BiPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    BiPoly() = default;
    BiPoly(const Rational& c);
    BiPoly(long c) : BiPoly(Rational(c)) {}
    BiPoly(int c) : BiPoly(Rational(c)) {}

    static BiPoly n();
    static BiPoly q();
    static BiPoly monomial(int deg_n, int deg_q, const Rational& c = Rational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int deg_n, int deg_q) const;

    /// Highest power of n over all terms; -1 for zero.
    int degree_n() const;
    /// Highest power of q over all terms; -1 for zero.
    int degree_q() const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const BiPoly& o);
    BiPoly& operator*=(const Rational& c);
    BiPoly& operator/=(const Rational& c);

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
    friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
    friend BiPoly operator/(BiPoly a, const Rational& c) { return a /= c; }
    friend BiPoly operator*(BiPoly a, long c) { return a *= Rational(c); }
    friend BiPoly operator*(long c, BiPoly a) { return a *= Rational(c); }
    friend BiPoly operator/(BiPoly a, long c) { return a /= Rational(c); }
    friend BiPoly operator+(BiPoly a, long c) { return a += BiPoly(c); }
    friend BiPoly operator+(long c, BiPoly a) { return a += BiPoly(c); }
    friend BiPoly operator-(BiPoly a, long c) { return a -= BiPoly(c); }
    friend BiPoly operator-(long c, const BiPoly& a) { return BiPoly(c) - a; }
    BiPoly operator-() const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    BiPoly pow(unsigned e) const;

    /// Exact value with n = n0 and q = 2^n0.
    Rational eval_at(unsigned n0) const;

    /// Term maximal in (deg_q, deg_n) order. Throws std::domain_error on the zero polynomial.
    LeadingTerm leading_term() const;

    std::string render(RenderFormat fmt) const;
    /// Parses the json rendering {"terms":[{"n":..,"q":..,"num":"..","den":".."},...]}.
    static BiPoly from_json(std::string_view text);

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

/// binom(n, a) as a degree-a polynomial in n.
BiPoly binom_poly(unsigned a);

/// (q/2^a)(q/2^a - 1)...(q/2^a - m + 1): ordered choices of m distinct tails of length n - a.
BiPoly falling_factorial_poly(unsigned a, unsigned m);

std::string to_string(RenderFormat fmt);
RenderFormat parse_render_format(std::string_view name);

}  // namespace subcubes
