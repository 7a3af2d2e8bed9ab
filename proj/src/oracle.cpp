#include "subcubes/oracle.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "oracle_detail.hpp"

namespace subcubes {

// ---------------------------------------------------------------- SubsetBitmap

SubsetBitmap::SubsetBitmap(unsigned n) : n_(n) {
    if (n > max_n) throw std::invalid_argument("SubsetBitmap: n must be at most 30");
    words_.assign(std::max<std::uint64_t>(1, (std::uint64_t{1} << n) / 64), 0);
}

SubsetBitmap SubsetBitmap::full(unsigned n) {
    SubsetBitmap s(n);
    std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
    s.trim();
    return s;
}

SubsetBitmap SubsetBitmap::parse(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        items.push_back(text.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (items.empty() || items.front().empty()) throw std::invalid_argument("subset: expected bitstrings like 000,011");
    unsigned n = static_cast<unsigned>(items.front().size());
    SubsetBitmap s(n);
    for (auto item : items) {
        if (item.size() != n) throw std::invalid_argument("subset: bitstrings of unequal length");
        std::uint64_t x = 0;
        for (unsigned j = 0; j < n; ++j) {
            if (item[j] == '1') x |= std::uint64_t{1} << j;
            else if (item[j] != '0') throw std::invalid_argument("subset: bad character in '" + std::string(item) + "'");
        }
        s.insert(x);
    }
    return s;
}

std::uint64_t SubsetBitmap::cardinality() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

void SubsetBitmap::trim() {
    if (n_ < 6) words_[0] &= (std::uint64_t{1} << (std::uint64_t{1} << n_)) - 1;
}

// ---------------------------------------------------------------- counting

namespace detail {

std::vector<std::uint64_t> star_masks(unsigned n, unsigned r) {
    std::vector<std::uint64_t> out;
    if (r > n) return out;
    if (r == 0) return {0};
    std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t D = (std::uint64_t{1} << r) - 1; D < limit;) {
        out.push_back(D);
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t c = D & -D, rr = D + c;
        D = (((rr ^ D) >> 2) / c) | rr;
    }
    return out;
}

std::uint64_t low_base_mask(std::uint64_t D) {
    std::uint64_t low = D & 63, m = 0;
    for (unsigned b = 0; b < 64; ++b)
        if ((b & low) == 0) m |= std::uint64_t{1} << b;
    return m;
}

std::uint64_t count_with_masks(std::span<const std::uint64_t> S, std::span<const std::uint64_t> masks,
                               std::vector<std::uint64_t>& scratch) {
    const std::size_t W = S.size();
    std::uint64_t total = 0;
    for (std::uint64_t D : masks) {
        const std::uint64_t high = D >> 6, lowmask = low_base_mask(D);
        if (std::popcount(D) == 1) {
            // One fold, fused with the count.
            std::uint64_t s = D;
            for (std::size_t i = 0; i < W; ++i) {
                if (i & high) continue;
                std::uint64_t shifted;
                if (s >= 64) shifted = i + (s >> 6) < W ? S[i + (s >> 6)] : 0;
                else shifted = (S[i] >> s) | (i + 1 < W ? S[i + 1] << (64 - s) : 0);
                total += static_cast<std::uint64_t>(std::popcount(S[i] & shifted & lowmask));
            }
            continue;
        }
        scratch.assign(S.begin(), S.end());
        for (std::uint64_t rest = D; rest; rest &= rest - 1) {
            std::uint64_t s = std::uint64_t{1} << std::countr_zero(rest);
            // t[x] &= t[x + s]; ascending order reads words before they are overwritten.
            for (std::size_t i = 0; i < W; ++i) {
                std::uint64_t shifted;
                if (s >= 64) shifted = i + (s >> 6) < W ? scratch[i + (s >> 6)] : 0;
                else shifted = (scratch[i] >> s) | (i + 1 < W ? scratch[i + 1] << (64 - s) : 0);
                scratch[i] &= shifted;
            }
        }
        for (std::size_t i = 0; i < W; ++i)
            if (!(i & high)) total += static_cast<std::uint64_t>(std::popcount(scratch[i] & lowmask));
    }
    return total;
}

std::vector<std::uint32_t> point_masks(unsigned n, unsigned r) {
    std::vector<std::uint32_t> out;
    for (const auto& c : all_subcubes(n, r)) {
        std::uint32_t m = 0;
        for (std::uint32_t x = 0; x < (1u << n); ++x)
            if (c.contains(x)) m |= 1u << x;
        out.push_back(m);
    }
    return out;
}

void check_subsets_range(unsigned n, bool allow_n5) {
    if (n > 5 || (n == 5 && !allow_n5))
        throw std::invalid_argument("exact_moment_subsets: n must be at most 4 (5 only as an explicit stretch run)");
}

void check_subsets_factors(std::span<const unsigned> rs) {
    // 2^32 subsets times a product of counts below 2^7 each must stay under 2^127.
    if (rs.empty() || rs.size() > 12) throw std::invalid_argument("exact_moment_subsets: need 1..12 factors");
}

}  // namespace detail

std::uint64_t count_subcubes(const SubsetBitmap& S, unsigned r, CountMethod method) {
    const unsigned n = S.n();
    if (r > n) throw std::invalid_argument("count_subcubes: r exceeds n");
    const auto masks = detail::star_masks(n, r);
    if (method == CountMethod::bitparallel) {
        std::vector<std::uint64_t> scratch;
        return detail::count_with_masks(S.words(), masks, scratch);
    }
    std::uint64_t total = 0;
    for (std::uint64_t D : masks) {
        for (std::uint64_t x = 0; x < S.size(); ++x) {
            if (x & D) continue;
            bool all = true;
            for (std::uint64_t y = D;; y = (y - 1) & D) {
                if (!S.contains(x | y)) {
                    all = false;
                    break;
                }
                if (y == 0) break;
            }
            total += all;
        }
    }
    return total;
}

std::vector<CubePattern> all_subcubes(unsigned n, unsigned r) {
    std::vector<CubePattern> out;
    if (n > CubePattern::max_width) throw std::invalid_argument("all_subcubes: n too large");
    for (std::uint64_t D : detail::star_masks(n, r)) {
        std::uint64_t F = CubePattern::full_mask(n) & ~D;
        // Bases: all submasks of the fixed coordinates, ascending.
        for (std::uint64_t x = 0;; x = (x - F) & F) {
            out.push_back(CubePattern::from_masks(n, D, x));
            if (x == F) break;
        }
    }
    return out;
}

mpz_class subcube_count(unsigned n, unsigned r) {
    if (r > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, r);
    return b << (n - r);
}

Rational exact_moment_subsets_serial(unsigned n, std::span<const unsigned> rs, bool allow_n5) {
    detail::check_subsets_range(n, allow_n5);
    detail::check_subsets_factors(rs);
    std::vector<std::vector<std::uint32_t>> cubes;
    for (unsigned r : rs) cubes.push_back(detail::point_masks(n, r));
    const std::uint64_t subsets = std::uint64_t{1} << (1u << n);
    unsigned __int128 sum = 0;
    for (std::uint64_t S = 0; S < subsets; ++S) {
        unsigned __int128 prod = 1;
        for (const auto& list : cubes) {
            std::uint64_t x = 0;
            for (auto m : list) x += (S & m) == m;
            prod *= x;
        }
        sum += prod;
    }
    return Rational(mpz_class(to_string(sum)), mpz_class(to_string(subsets)));
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace subcubes
