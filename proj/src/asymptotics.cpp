#include "subcubes/asymptotics.hpp"

#include <stdexcept>

#include "json.hpp"

namespace subcubes {

HighPrecision to_high_precision(const Rational& x) {
    return HighPrecision(x.numerator().get_str()) / HighPrecision(x.denominator().get_str());
}

CumulantSeq moments_to_cumulants(std::span<const BiPoly> ms, unsigned K) {
    if (K == 0) throw std::invalid_argument("moments_to_cumulants: K must be positive");
    if (K > ms.size()) throw std::invalid_argument("moments_to_cumulants: need m_1..m_K");
    CumulantSeq out;
    for (unsigned k = 1; k <= K; ++k) {
        BiPoly kappa = ms[k - 1];
        mpz_class binom = 1;   // binom(k-1, j-1)
        for (unsigned j = 1; j < k; ++j) {
            kappa -= out.kappas[j - 1] * ms[k - j - 1] * Rational(binom);
            binom = binom * (k - j) / j;
        }
        out.kappas.push_back(std::move(kappa));
    }
    return out;
}

std::vector<BiPoly> cumulants_to_moments(const CumulantSeq& c) {
    std::vector<BiPoly> ms;
    const auto K = static_cast<unsigned>(c.kappas.size());
    for (unsigned k = 1; k <= K; ++k) {
        BiPoly m = c.kappas[k - 1];
        mpz_class binom = 1;
        for (unsigned j = 1; j < k; ++j) {
            m += c.kappas[j - 1] * ms[k - j - 1] * Rational(binom);
            binom = binom * (k - j) / j;
        }
        ms.push_back(std::move(m));
    }
    return ms;
}

Rational normal_moment(unsigned k) {
    if (k % 2) return Rational(0);
    mpz_class v = 1;
    for (unsigned j = k - 1; j >= 1 && j < k; j -= 2) v *= j;
    return Rational(v);
}

Rational leading_ratio_limit(const BiPoly& P, const BiPoly& variance, unsigned k) {
    if (P.is_zero()) return Rational(0);
    const auto lp = P.leading_term();
    const auto lv = variance.leading_term();
    // Compare (deg_q, deg_n) of P against k/2 times those of the variance, doubled to stay integral.
    const long pq = 2L * lp.deg_q, pn = 2L * lp.deg_n;
    const long vq = static_cast<long>(k) * lv.deg_q, vn = static_cast<long>(k) * lv.deg_n;
    if (pq < vq || (pq == vq && pn < vn)) return Rational(0);
    if (pq == vq && pn == vn) {
        if (k % 2) throw std::domain_error("leading_ratio_limit: irrational limit for odd k");
        return lp.coeff / lv.coeff.pow(k / 2);
    }
    throw std::domain_error("leading_ratio_limit: numerator outgrows variance^(k/2)");
}

Rational scaled_limit(unsigned r, unsigned k, const EngineOptions& options) {
    return leading_ratio_limit(central_moment(r, k, Rational(1, 2), options), variance_closed(r), k);
}

bool DecayReport::all_pass() const {
    for (const auto& rec : records)
        if (!rec.pass) return false;
    return true;
}

std::string DecayReport::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
        nlohmann::ordered_json j;
        j["k"] = rec.k;
        j["deg_q"] = rec.deg_q;
        j["deg_n"] = rec.deg_n;
        j["limit_num"] = rec.limit.numerator().get_str();
        j["limit_den"] = rec.limit.denominator().get_str();
        j["pass"] = rec.pass;
        arr.push_back(std::move(j));
    }
    return arr.dump();
}

DecayReport cumulant_decay_check(unsigned r, const CumulantSeq& cumulants, const BiPoly& variance) {
    DecayReport report{r, {}};
    for (unsigned k = 3; k <= cumulants.kappas.size(); ++k) {
        const BiPoly& kappa = cumulants.kappas[k - 1];
        DecayRecord rec{k, -1, -1, Rational(0), true};
        if (!kappa.is_zero()) {
            auto lt = kappa.leading_term();
            rec.deg_q = lt.deg_q;
            rec.deg_n = lt.deg_n;
            try {
                rec.limit = leading_ratio_limit(kappa, variance, k);
                rec.pass = rec.limit.is_zero();
            } catch (const std::domain_error&) {
                rec.pass = false;
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

DecayReport cumulant_decay_check(unsigned r, unsigned K, const EngineOptions& options) {
    auto ms = pure_moments(r, K, Rational(1, 2), options);
    return cumulant_decay_check(r, moments_to_cumulants(ms, K), variance_closed(r));
}

}  // namespace subcubes
