#include "subcubes/exactalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace subcubes {

// ---------------------------------------------------------------- Rational

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s) {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start ||
            !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return mpz_class(digits, 10);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    auto den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive: '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::pow(unsigned e) const {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), e);
    return Rational(num, den);
}

Rational Rational::pow2(long e) {
    mpz_class p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

std::string Rational::str() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

// ---------------------------------------------------------------- BiPoly

BiPoly::BiPoly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{0, 0}, c);
}

BiPoly BiPoly::n() { return monomial(1, 0); }
BiPoly BiPoly::q() { return monomial(0, 1); }

BiPoly BiPoly::monomial(int deg_n, int deg_q, const Rational& c) {
    if (deg_n < 0 || deg_q < 0) throw std::invalid_argument("BiPoly: negative exponent");
    BiPoly p;
    p.add_term(Monomial{deg_n, deg_q}, c);
    return p;
}

Rational BiPoly::coeff(int deg_n, int deg_q) const {
    auto it = terms_.find(Monomial{deg_n, deg_q});
    return it == terms_.end() ? Rational(0) : it->second;
}

int BiPoly::degree_n() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.deg_n);
    return d;
}

int BiPoly::degree_q() const { return terms_.empty() ? -1 : terms_.rbegin()->first.deg_q; }

void BiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(Monomial{ma.deg_n + mb.deg_n, ma.deg_q + mb.deg_q}, ca * cb);
    return out;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) { return *this = *this * o; }

BiPoly& BiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

BiPoly& BiPoly::operator/=(const Rational& c) {
    if (c.is_zero()) throw std::domain_error("BiPoly: division by zero");
    for (auto& [m, v] : terms_) v /= c;
    return *this;
}

BiPoly BiPoly::operator-() const {
    BiPoly out = *this;
    for (auto& [m, v] : out.terms_) v = -v;
    return out;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly result(1), base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Rational BiPoly::eval_at(unsigned n0) const {
    Rational q = Rational::pow2(n0);
    Rational nv(static_cast<long>(n0));
    Rational sum(0);
    for (const auto& [m, c] : terms_) sum += c * nv.pow(m.deg_n) * q.pow(m.deg_q);
    return sum;
}

LeadingTerm BiPoly::leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading_term of the zero polynomial");
    const auto& [m, c] = *terms_.rbegin();
    return LeadingTerm{m.deg_q, m.deg_n, c};
}

// ---------------------------------------------------------------- rendering

namespace {

std::string plain_monomial(const Monomial& m, bool maple) {
    std::vector<std::string> parts;
    if (m.deg_n == 1) parts.emplace_back("n");
    else if (m.deg_n > 1) parts.push_back("n^" + std::to_string(m.deg_n));
    if (m.deg_q == 1) parts.emplace_back("2^n");
    else if (m.deg_q > 1)
        parts.push_back(maple ? "(2^n)^" + std::to_string(m.deg_q)
                              : "2^(" + std::to_string(m.deg_q) + "*n)");
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "*" : "") + parts[i];
    return out;
}

std::string latex_monomial(const Monomial& m) {
    std::string out;
    if (m.deg_n == 1) out += "n";
    else if (m.deg_n > 1) out += "n^{" + std::to_string(m.deg_n) + "}";
    if (m.deg_q >= 1 && !out.empty()) out += " ";
    if (m.deg_q == 1) out += "2^{n}";
    else if (m.deg_q > 1) out += "\\left(2^{n}\\right)^{" + std::to_string(m.deg_q) + "}";
    return out;
}

template <class TermFn>
std::string join_terms(const BiPoly::Terms& terms, TermFn term) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        bool neg = it->second.sign() < 0;
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        out += term(it->first, abs(it->second.numerator()), it->second.denominator());
        first = false;
    }
    return out;
}

}  // namespace

std::string BiPoly::render(RenderFormat fmt) const {
    switch (fmt) {
    case RenderFormat::plain:
    case RenderFormat::maple: {
        bool maple = fmt == RenderFormat::maple;
        return join_terms(terms_, [maple](const Monomial& m, const mpz_class& num, const mpz_class& den) {
            std::string mono = plain_monomial(m, maple);
            std::string den_s = den == 1 ? "" : "/" + den.get_str();
            if (mono.empty()) return num.get_str() + den_s;
            if (maple) return num.get_str() + den_s + "*" + mono;
            return (num == 1 ? "" : num.get_str() + "*") + mono + den_s;
        });
    }
    case RenderFormat::latex:
        return join_terms(terms_, [](const Monomial& m, const mpz_class& num, const mpz_class& den) {
            std::string mono = latex_monomial(m);
            std::string coef;
            if (den != 1) coef = "\\frac{" + num.get_str() + "}{" + den.get_str() + "}";
            else if (num != 1 || mono.empty()) coef = num.get_str();
            if (coef.empty()) return mono;
            return mono.empty() ? coef : coef + " " + mono;
        });
    case RenderFormat::json: {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            nlohmann::ordered_json t;
            t["n"] = it->first.deg_n;
            t["q"] = it->first.deg_q;
            t["num"] = it->second.numerator().get_str();
            t["den"] = it->second.denominator().get_str();
            terms.push_back(std::move(t));
        }
        nlohmann::ordered_json doc;
        doc["terms"] = std::move(terms);
        return doc.dump();
    }
    }
    throw std::invalid_argument("unknown render format");
}

BiPoly BiPoly::from_json(std::string_view text) {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
        throw std::invalid_argument("polynomial json: expected object with array 'terms'");
    BiPoly out;
    for (const auto& t : doc["terms"]) {
        int dn = t.at("n").get<int>();
        int dq = t.at("q").get<int>();
        if (dn < 0 || dq < 0) throw std::invalid_argument("polynomial json: negative exponent");
        auto c = Rational::parse(t.at("num").get<std::string>() + "/" + t.at("den").get<std::string>());
        out.add_term(Monomial{dn, dq}, c);
    }
    return out;
}

std::string to_string(RenderFormat fmt) {
    switch (fmt) {
    case RenderFormat::plain: return "plain";
    case RenderFormat::latex: return "latex";
    case RenderFormat::maple: return "maple";
    case RenderFormat::json: return "json";
    }
    return "?";
}

RenderFormat parse_render_format(std::string_view name) {
    if (name == "plain") return RenderFormat::plain;
    if (name == "latex") return RenderFormat::latex;
    if (name == "maple") return RenderFormat::maple;
    if (name == "json") return RenderFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- special polynomials

BiPoly binom_poly(unsigned a) {
    BiPoly p(1);
    mpz_class fact = 1;
    for (unsigned j = 0; j < a; ++j) {
        p *= BiPoly::n() - static_cast<long>(j);
        fact *= j + 1;
    }
    return p / Rational(fact);
}

BiPoly falling_factorial_poly(unsigned a, unsigned m) {
    BiPoly tails = BiPoly::q() * Rational::pow2(-static_cast<long>(a));
    BiPoly p(1);
    for (unsigned j = 0; j < m; ++j) p *= tails - static_cast<long>(j);
    return p;
}

}  // namespace subcubes
