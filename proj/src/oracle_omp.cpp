#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oracle_detail.hpp"
#include "subcubes/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

namespace {

int thread_count(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

}  // namespace

Rational exact_moment_subsets(unsigned n, std::span<const unsigned> rs, bool allow_n5) {
    detail::check_subsets_range(n, allow_n5);
    detail::check_subsets_factors(rs);
    std::vector<std::vector<std::uint32_t>> cubes;
    for (unsigned r : rs) cubes.push_back(detail::point_masks(n, r));
    const auto subsets = static_cast<std::int64_t>(std::uint64_t{1} << (1u << n));
    unsigned __int128 sum = 0;
#pragma omp parallel num_threads(thread_count(0))
    {
        unsigned __int128 local = 0;
#pragma omp for schedule(static)
        for (std::int64_t S = 0; S < subsets; ++S) {
            const auto set = static_cast<std::uint32_t>(S);
            unsigned __int128 prod = 1;
            for (const auto& list : cubes) {
                std::uint64_t x = 0;
                for (auto m : list) x += (set & m) == m;
                prod *= x;
            }
            local += prod;
        }
#pragma omp critical(subcubes_subset_sum)
        sum += local;
    }
    return Rational(mpz_class(to_string(sum)), mpz_class(to_string(static_cast<Count>(subsets))));
}

Rational exact_moment_tuples(unsigned n, std::span<const unsigned> rs, const Rational& p, std::uint64_t budget) {
    if (rs.empty() || rs.size() > 16) throw std::invalid_argument("exact_moment_tuples: need 1..16 factors");
    if (n > 30) throw std::invalid_argument("exact_moment_tuples: n must be at most 30");
    for (unsigned r : rs)
        if (r > n) return Rational(0);
    mpz_class tuples = 1;
    for (unsigned r : rs) tuples *= subcube_count(n, r);
    if (tuples > budget)
        throw ResourceAbort("exact_moment_tuples: " + tuples.get_str() + " tuples exceed the budget of " +
                            std::to_string(budget));

    std::vector<std::vector<CubePattern>> cubes;
    for (unsigned r : rs) cubes.push_back(all_subcubes(n, r));
    unsigned max_v = 0;
    for (unsigned r : rs) max_v += 1u << r;
    const auto total = static_cast<std::int64_t>(tuples.get_ui());
    const std::size_t k = rs.size();

    std::vector<Count> histogram(max_v + 1, 0);
#pragma omp parallel num_threads(thread_count(0))
    {
        std::vector<Count> local(max_v + 1, 0);
        std::vector<CubePattern> tuple(k);
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < total; ++idx) {
            auto rest = static_cast<std::uint64_t>(idx);
            for (std::size_t i = k; i-- > 0;) {
                tuple[i] = cubes[i][rest % cubes[i].size()];
                rest /= cubes[i].size();
            }
            ++local[union_cardinality(tuple)];
        }
#pragma omp critical(subcubes_tuple_hist)
        for (unsigned v = 0; v <= max_v; ++v) histogram[v] += local[v];
    }
    Rational sum(0), pv(1);
    for (unsigned v = 0; v <= max_v; ++v) {
        if (histogram[v]) sum += Rational(mpz_class(to_string(histogram[v]))) * pv;
        pv *= p;
    }
    return sum;
}

McEstimate mc_estimate(unsigned n, unsigned r, unsigned k, std::uint64_t samples, std::uint64_t seed, int threads) {
    if (n > SubsetBitmap::max_n) throw std::invalid_argument("mc_estimate: n must be at most 30");
    if (r > n) throw std::invalid_argument("mc_estimate: r exceeds n");
    if (k == 0 || samples < 2) throw std::invalid_argument("mc_estimate: need k >= 1 and at least 2 samples");
    const auto masks = detail::star_masks(n, r);
    const std::size_t W = SubsetBitmap(n).words().size();
    const auto count = static_cast<std::int64_t>(samples);

    // Exact tallies of X^k and X^(2k); the final division happens once.
    mpz_class sum1 = 0, sum2 = 0;
#pragma omp parallel num_threads(thread_count(threads))
    {
        mpz_class local1 = 0, local2 = 0, xk;
        SubsetBitmap S(n);
        std::vector<std::uint64_t> scratch;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) {
            auto words = S.words();
            const std::uint64_t base = static_cast<std::uint64_t>(i) * W;
            for (std::size_t w = 0; w < W; ++w) words[w] = splitmix64_at(seed, base + w);
            S.trim();
            std::uint64_t x = detail::count_with_masks(S.words(), masks, scratch);
            mpz_ui_pow_ui(xk.get_mpz_t(), x, k);
            local1 += xk;
            local2 += xk * xk;
        }
#pragma omp critical(subcubes_mc_sum)
        {
            sum1 += local1;
            sum2 += local2;
        }
    }
    mpq_class N(static_cast<unsigned long>(samples));
    mpq_class mean = mpq_class(sum1) / N;
    mpq_class var = (mpq_class(sum2) - mpq_class(sum1) * mean) / (N - 1);
    double se = std::sqrt(std::max(0.0, var.get_d()) / static_cast<double>(samples));
    return McEstimate{mean.get_d(), se, samples, seed, "splitmix64-counter (word c of sample i at counter i*W+c)"};
}

}  // namespace subcubes
