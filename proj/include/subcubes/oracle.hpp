#pragma once
// Ground truth by explicit enumeration: subcube counts in concrete subsets, exact moments over all
// subsets or all cube tuples, and Monte-Carlo estimates.
//
// Point encoding: coordinate j of {0,1}^n is bit j of the point index. In bitstring notation such as
// "011", character j is coordinate j.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subcubes/cubes.hpp"
#include "subcubes/errors.hpp"
#include "subcubes/exactalg.hpp"

namespace subcubes {

/// Subset of {0,1}^n as a 2^n-bit vector (n <= 30).
class SubsetBitmap {
public:
    static constexpr unsigned max_n = 30;

    explicit SubsetBitmap(unsigned n);
    static SubsetBitmap full(unsigned n);
    /// Parses comma-separated bitstrings of equal length, e.g. "000,001,010".
    static SubsetBitmap parse(std::string_view text);

    unsigned n() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    bool contains(std::uint64_t x) const { return words_[x >> 6] >> (x & 63) & 1u; }
    void insert(std::uint64_t x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
    void erase(std::uint64_t x) { words_[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
    std::uint64_t cardinality() const;

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    /// Clears bits at and above 2^n in the last word.
    void trim();

private:
    unsigned n_;
    std::vector<std::uint64_t> words_;
};

enum class CountMethod { naive, bitparallel };

/// Number of r-dimensional subcubes lying entirely inside S.
std::uint64_t count_subcubes(const SubsetBitmap& S, unsigned r, CountMethod method = CountMethod::bitparallel);

/// All r-subcubes of {0,1}^n as full-width patterns, ordered by star mask then base point.
std::vector<CubePattern> all_subcubes(unsigned n, unsigned r);

/// |C(n,r)| = binom(n,r) 2^(n-r).
mpz_class subcube_count(unsigned n, unsigned r);

/// Average of prod_i X_{r_i}(S) over all 2^(2^n) subsets. n <= 4, or n = 5 with allow_n5.
Rational exact_moment_subsets(unsigned n, std::span<const unsigned> rs, bool allow_n5 = false);
Rational exact_moment_subsets_serial(unsigned n, std::span<const unsigned> rs, bool allow_n5 = false);

/// Σ over ordered cube tuples (C_1..C_k) of p^|C_1 ∪ ... ∪ C_k|. Aborts with ResourceAbort past `budget` tuples.
Rational exact_moment_tuples(unsigned n, std::span<const unsigned> rs, const Rational& p,
                             std::uint64_t budget = 100'000'000);

struct McEstimate {
    double mean;
    double standard_error;
    std::uint64_t samples;
    std::uint64_t seed;
    std::string rng;   // generator description, recorded for reproducibility
};

/// Sample mean of X_r(S)^k over uniform random subsets S of {0,1}^n (p = 1/2).
/// Sample i draws word w from SplitMix64 at counter i * words + w, so results do not depend on threads.
McEstimate mc_estimate(unsigned n, unsigned r, unsigned k, std::uint64_t samples, std::uint64_t seed, int threads = 0);

/// Word c of the counter-based stream for `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);

}  // namespace subcubes
