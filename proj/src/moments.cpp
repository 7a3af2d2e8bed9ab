#include "subcubes/moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "subcubes/weights.hpp"

namespace subcubes {

void MomentSpec::validate() const {
    if (rs.empty() || rs.size() > KernelRows::max_rows)
        throw std::invalid_argument("moment spec: need between 1 and 8 factors");
    if (p <= Rational(0) || p >= Rational(1)) throw std::invalid_argument("moment spec: p must lie in (0,1)");
    unsigned sum = std::accumulate(rs.begin(), rs.end(), 0u);
    if (sum > KernelRows::max_cols) throw std::invalid_argument("moment spec: sum of dimensions exceeds 32");
}

namespace {

constexpr std::size_t batch_size = 1 << 14;

// log2 of Bell(k) * prod_i binom(a, r_i) 2^(a - r_i): bounds every tally for a given a.
double log2_tally_bound(std::span<const unsigned> rs, unsigned a) {
    static constexpr double bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    double bits = std::log2(bell[rs.size()]);
    for (unsigned r : rs)
        bits += (std::lgamma(a + 1.0) - std::lgamma(r + 1.0) - std::lgamma(a - r + 1.0)) / std::log(2.0) + (a - r);
    return bits;
}

class Budget {
public:
    explicit Budget(const EngineOptions& o) : opts_(o), start_(std::chrono::steady_clock::now()) {}

    void tick(EngineStats& st) {
        ++st.kernels;
        if (opts_.max_kernels && st.kernels > opts_.max_kernels)
            throw ResourceAbort("moment engine: kernel budget of " + std::to_string(opts_.max_kernels) +
                                " representatives exceeded");
        if (opts_.max_seconds > 0 && (st.kernels & 1023u) == 0) check_time();
    }
    void check_time() const {
        if (opts_.max_seconds <= 0) return;
        std::chrono::duration<double> el = std::chrono::steady_clock::now() - start_;
        if (el.count() > opts_.max_seconds)
            throw ResourceAbort("moment engine: time budget of " + std::to_string(opts_.max_seconds) + "s exceeded");
    }

private:
    const EngineOptions& opts_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

BiPoly mixed_moment(const MomentSpec& spec, const EngineOptions& options, EngineStats* stats) {
    spec.validate();
    const auto& rs = spec.rs;
    const unsigned k = static_cast<unsigned>(rs.size());
    const unsigned a_min = *std::max_element(rs.begin(), rs.end());
    const unsigned a_max = std::accumulate(rs.begin(), rs.end(), 0u);
    unsigned max_v = 0;
    for (unsigned r : rs) max_v += 1u << r;

    std::vector<Rational> p_pow(max_v + 1, Rational(1));
    for (unsigned v = 1; v <= max_v; ++v) p_pow[v] = p_pow[v - 1] * spec.p;

    const auto partitions = enumerate_set_partitions(k);
    EngineStats local_stats;
    EngineStats& st = stats ? *stats : local_stats;
    Budget budget(options);

    BiPoly result;
    std::vector<WeightedKernel> batch;
    batch.reserve(batch_size);
    for (unsigned a = a_min; a <= a_max; ++a) {
        if (log2_tally_bound(rs, a) >= 126)
            throw ResourceAbort("moment engine: tallies for a = " + std::to_string(a) + " could exceed 128 bits");
        WeightTable table(k, max_v);
        auto flush = [&] {
            if (options.parallel) accumulate_parallel(batch, partitions, table, options.threads);
            else accumulate_serial(batch, partitions, table);
            batch.clear();
            budget.check_time();
        };
        enumerate_kernels(rs, a, options.mode, [&](const KernelRows& K, Count mult) {
            budget.tick(st);
            st.multiplicity += mult;
            batch.push_back({K, mult});
            if (batch.size() == batch_size) flush();
        });
        flush();

        BiPoly inner;
        for (unsigned m = 1; m <= k; ++m) {
            Rational w(0);
            for (unsigned v = 0; v <= max_v; ++v) {
                Count c = table.at(m, v);
                if (c) w += Rational(mpz_class(to_string(c))) * p_pow[v];
            }
            if (!w.is_zero()) inner += falling_factorial_poly(a, m) * w;
        }
        result += binom_poly(a) * inner;
    }
    return result;
}

BiPoly mean_closed(unsigned r, const Rational& p) {
    return binom_poly(r) * BiPoly::q() * (Rational::pow2(-static_cast<long>(r)) * p.pow(1u << r));
}

BiPoly variance_closed(unsigned r) {
    if (r > 30) throw std::invalid_argument("variance_closed: r must be at most 30");
    BiPoly total;
    const Rational scale = Rational::pow2(-(1L << (r + 1)));
    mpz_class fact_i = 1;
    for (unsigned i = 0; i <= r; ++i) {
        if (i) fact_i *= i;
        mpz_class fact_ri;
        mpz_fac_ui(fact_ri.get_mpz_t(), r - i);
        // n!/(n-2r+i)! as the falling factorial n(n-1)...(n-2r+i+1).
        BiPoly falling(1);
        for (unsigned j = 0; j < 2 * r - i; ++j) falling *= BiPoly::n() - static_cast<long>(j);
        Rational c = scale * (Rational::pow2(1L << i) - Rational(1)) * Rational::pow2(-static_cast<long>(i)) /
                     Rational(mpz_class(fact_i * fact_ri * fact_ri));
        total += falling * BiPoly::q() * c;
    }
    return total;
}

BiPoly second_moment_closed(unsigned r) {
    if (r > 30) throw std::invalid_argument("second_moment_closed: r must be at most 30");
    BiPoly count = binom_poly(r) * BiPoly::q() * Rational::pow2(-static_cast<long>(r));
    return variance_closed(r) + count * count * Rational::pow2(-(1L << (r + 1)));
}

std::vector<BiPoly> pure_moments(unsigned r, unsigned k, const Rational& p, const EngineOptions& options) {
    std::vector<BiPoly> out;
    for (unsigned j = 1; j <= k; ++j) out.push_back(mixed_moment(MomentSpec{std::vector<unsigned>(j, r), p}, options));
    return out;
}

BiPoly central_moment(unsigned r, unsigned k, const Rational& p, const EngineOptions& options) {
    if (k == 0) throw std::invalid_argument("central_moment: k must be positive");
    const BiPoly neg_mu = -mean_closed(r, p);
    // Σ_j binom(k,j) (-mu)^(k-j) E[X^j]
    BiPoly total = neg_mu.pow(k);
    mpz_class binom = 1;
    for (unsigned j = 1; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;
        BiPoly mj = mixed_moment(MomentSpec{std::vector<unsigned>(j, r), p}, options);
        total += neg_mu.pow(k - j) * mj * Rational(binom);
    }
    return total;
}

}  // namespace subcubes
