#pragma once
// Deliberately naive oracles used only by the tests. Nothing here calls into the library's counting,
// union or moment code, so agreement with it is evidence rather than tautology.

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "subcubes/exactalg.hpp"

namespace brute {

struct Cube {
    std::uint32_t stars;
    std::uint32_t ones;
};

/// Every word over {0,1,*}^n with exactly r stars, by walking all 3^n words.
inline std::vector<Cube> cubes(unsigned n, unsigned r) {
    std::vector<Cube> out;
    unsigned total = 1;
    for (unsigned i = 0; i < n; ++i) total *= 3;
    for (unsigned w = 0; w < total; ++w) {
        Cube c{0, 0};
        unsigned x = w;
        for (unsigned j = 0; j < n; ++j, x /= 3) {
            if (x % 3 == 2) c.stars |= 1u << j;
            else if (x % 3 == 1) c.ones |= 1u << j;
        }
        if (static_cast<unsigned>(std::popcount(c.stars)) == r) out.push_back(c);
    }
    return out;
}

inline bool point_in(const Cube& c, std::uint32_t x) { return (x & ~c.stars) == c.ones; }

/// Points of {0,1}^n as bits of a 64-bit set (n <= 6).
inline std::uint64_t points_of(const Cube& c, unsigned n) {
    std::uint64_t s = 0;
    for (std::uint32_t x = 0; x < (1u << n); ++x)
        if (point_in(c, x)) s |= std::uint64_t{1} << x;
    return s;
}

/// X_r(S) for S a set of points of {0,1}^n (n <= 6) given as a bitmask.
inline unsigned count(std::uint64_t S, unsigned n, unsigned r) {
    unsigned c = 0;
    for (const auto& cube : cubes(n, r)) {
        std::uint64_t pts = points_of(cube, n);
        c += (S & pts) == pts;
    }
    return c;
}

/// E[Π X_{r_i}] with each point kept independently with probability p, by summing over all subsets.
inline subcubes::Rational subset_moment(unsigned n, const std::vector<unsigned>& rs,
                                        const subcubes::Rational& p = subcubes::Rational(1, 2)) {
    const unsigned N = 1u << n;
    std::vector<std::vector<std::uint64_t>> pts(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (const auto& c : cubes(n, rs[i])) pts[i].push_back(points_of(c, n));
    std::vector<subcubes::Rational> by_size(N + 1, subcubes::Rational(0));
    std::vector<mpz_class> weight(N + 1, 0);
    for (std::uint64_t S = 0; S < (std::uint64_t{1} << N); ++S) {
        mpz_class prod = 1;
        for (const auto& list : pts) {
            unsigned x = 0;
            for (auto m : list) x += (S & m) == m;
            prod *= x;
        }
        weight[std::popcount(S)] += prod;
    }
    subcubes::Rational total(0);
    const subcubes::Rational one_minus = subcubes::Rational(1) - p;
    for (unsigned s = 0; s <= N; ++s)
        if (weight[s] != 0) total += subcubes::Rational(weight[s]) * p.pow(s) * one_minus.pow(N - s);
    return total;
}

/// |∪ C_i| by walking the points of {0,1}^width (width <= 20).
inline std::uint64_t union_points(const std::vector<Cube>& cs, unsigned width) {
    std::uint64_t c = 0;
    for (std::uint32_t x = 0; x < (1u << width); ++x) {
        bool in = false;
        for (const auto& cube : cs) in = in || point_in(cube, x);
        c += in;
    }
    return c;
}

/// Random polynomial with a few small rational coefficients.
inline subcubes::BiPoly random_poly(std::mt19937_64& rng, int max_deg = 3, int max_terms = 4) {
    std::uniform_int_distribution<int> deg(0, max_deg), terms(0, max_terms), num(-9, 9), den(1, 6);
    subcubes::BiPoly P;
    for (int t = terms(rng); t > 0; --t)
        P += subcubes::BiPoly::monomial(deg(rng), deg(rng), subcubes::Rational(num(rng), den(rng)));
    return P;
}

}  // namespace brute
