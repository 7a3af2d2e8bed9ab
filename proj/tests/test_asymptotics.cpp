#include "doctest.h"

#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "brute.hpp"
#include "reference_formulas.hpp"
#include "subcubes/asymptotics.hpp"
#include "subcubes/oracle.hpp"

using namespace subcubes;

namespace {
const BiPoly n = BiPoly::n();
const BiPoly q = BiPoly::q();

// Σ_j binom(r,j) binom(n-r, r-j) 2^(r-j) - 1: cubes sharing j star directions with C and meeting it.
std::uint64_t degree_formula(unsigned n, unsigned r) {
    mpz_class total = 0, a, b;
    for (unsigned j = 0; j <= r; ++j) {
        mpz_bin_uiui(a.get_mpz_t(), r, j);
        mpz_bin_uiui(b.get_mpz_t(), n - r, r - j);
        total += a * b * (mpz_class(1) << (r - j));
    }
    return total.get_ui() - 1;
}
}  // namespace

TEST_CASE("cumulant recursion") {
    std::mt19937_64 rng(17);
    std::vector<BiPoly> ms;
    for (int i = 0; i < 6; ++i) ms.push_back(brute::random_poly(rng));
    const auto c = moments_to_cumulants(ms, 6);
    REQUIRE(c.kappas.size() == 6);
    CHECK(c.kappas[0] == ms[0]);
    CHECK(c.kappas[1] == ms[1] - ms[0] * ms[0]);
    CHECK(c.kappas[2] == ms[2] - 3 * ms[0] * ms[1] + 2 * ms[0].pow(3));
    CHECK(cumulants_to_moments(c) == ms);
    CHECK_THROWS_AS(moments_to_cumulants(ms, 7), std::invalid_argument);
    CHECK_THROWS_AS(moments_to_cumulants(ms, 0), std::invalid_argument);
}

TEST_CASE("cumulants of subcube counts") {
    for (unsigned r = 0; r <= 3; ++r) {
        CAPTURE(r);
        const auto ms = pure_moments(r, 3);
        const auto c = moments_to_cumulants(ms, 3);
        CHECK(c.kappas[1] == variance_closed(r));
        CHECK(c.kappas[2] == central_moment(r, 3));
    }
    CHECK(moments_to_cumulants(pure_moments(1, 3), 3).kappas[2] == reference::central_1_3());
    CHECK(moments_to_cumulants(pure_moments(2, 3), 3).kappas[2] == reference::central_2_3());
    CHECK(moments_to_cumulants(pure_moments(3, 3), 3).kappas[2] == reference::central_3_3());
}

TEST_CASE("normal moments") {
    Rational prev(1);
    for (unsigned k = 0; k <= 12; ++k) {
        if (k % 2) {
            CHECK(normal_moment(k) == Rational(0));
        } else if (k > 0) {
            // E[Z^k] = (k-1) E[Z^(k-2)]
            CHECK(normal_moment(k) == Rational(static_cast<long>(k) - 1) * prev);
            prev = normal_moment(k);
        }
    }
    CHECK(normal_moment(0) == Rational(1));
    CHECK(normal_moment(6) == Rational(15));
}

TEST_CASE("leading ratio limit") {
    const BiPoly V = q / 4;
    CHECK(leading_ratio_limit(3 * q * q / 16 + q, V, 4) == Rational(3));
    CHECK(leading_ratio_limit(n.pow(20) * q, V, 3) == Rational(0));
    CHECK(leading_ratio_limit(BiPoly(), V, 3) == Rational(0));
    CHECK_THROWS_AS(leading_ratio_limit(q * q, V, 3), std::domain_error);
}

TEST_CASE("scaled limits") {
    CHECK(scaled_limit(1, 3) == Rational(0));
    CHECK(scaled_limit(1, 4) == Rational(3));
    CHECK(scaled_limit(1, 5) == Rational(0));
    CHECK(scaled_limit(0, 4) == Rational(3));
    CHECK(scaled_limit(0, 6) == Rational(15));
    CHECK(scaled_limit(2, 3) == Rational(0));
    CHECK(scaled_limit(2, 4) == Rational(3));
    CHECK(scaled_limit(3, 3) == Rational(0));
    CHECK(leading_ratio_limit(reference::central_2_4(), variance_closed(2), 4) == Rational(3));
    for (unsigned r = 0; r <= 2; ++r)
        for (unsigned k = 1; k <= 4; ++k) CHECK(scaled_limit(r, k) == normal_moment(k));
}

TEST_CASE("cumulant decay") {
    auto rep = cumulant_decay_check(1, 3);
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].deg_q == 1);
    CHECK(rep.records[0].deg_n == 3);
    CHECK(rep.all_pass());

    rep = cumulant_decay_check(0, 4);
    REQUIRE(rep.records.size() == 2);
    CHECK(rep.records[0].deg_q == -1);   // the binomial third cumulant vanishes at p = 1/2
    CHECK(rep.records[1].deg_q == 1);
    CHECK(rep.all_pass());

    rep = cumulant_decay_check(2, 4);
    CHECK(rep.all_pass());
    CHECK(rep.to_json().find(R"("k":3,"deg_q":1,"deg_n":6,"limit_num":"0","limit_den":"1","pass":true)") !=
          std::string::npos);

    // A cumulant growing like the variance squared does not decay.
    CumulantSeq fake{{BiPoly(), q / 4, BiPoly(), q * q}};
    rep = cumulant_decay_check(0, fake, q / 4);
    CHECK(!rep.all_pass());
}

TEST_CASE("dependency graph examples") {
    auto g = build_dep_graph(2, 1);
    CHECK(g.stats.vertex_count == 4);
    CHECK(g.stats.max_degree == 2);
    CHECK(g.stats.is_regular);

    g = build_dep_graph(3, 1);
    CHECK(g.stats.vertex_count == 12);
    CHECK(g.stats.max_degree == 4);
    CHECK(g.stats.min_degree == 4);
    CHECK(g.stats.degree_bound == 6);

    g = build_dep_graph(5, 0);
    CHECK(!g.stats.has_edges);
    CHECK(g.stats.max_degree == 1);
    CHECK(g.stats.bound_A == 1);

    CHECK_THROWS_AS(build_dep_graph(17, 8), ResourceAbort);
    CHECK_THROWS_AS(build_dep_graph(3, 4), std::invalid_argument);
}

TEST_CASE("dependency graph is regular and matches a brute-force adjacency") {
    for (unsigned nn = 0; nn <= 13; ++nn)
        for (unsigned r = 0; r <= nn; ++r) {
            if (subcube_count(nn, r) > 10000) continue;
            CAPTURE(nn);
            CAPTURE(r);
            const auto g = build_dep_graph(nn, r);
            CHECK(g.stats.is_regular);
            CHECK(g.stats.max_degree <= g.stats.degree_bound);
            if (g.stats.has_edges) CHECK(g.stats.max_degree == degree_formula(nn, r));
            CHECK(mpz_class(g.stats.vertex_count) == subcube_count(nn, r));
            if (nn <= 4) {
                for (std::size_t v = 0; v < g.vertices.size(); ++v) {
                    const brute::Cube a{static_cast<std::uint32_t>(g.vertices[v].stars()),
                                        static_cast<std::uint32_t>(g.vertices[v].ones())};
                    std::vector<std::uint32_t> expected;
                    for (std::size_t u = 0; u < g.vertices.size(); ++u) {
                        const brute::Cube b{static_cast<std::uint32_t>(g.vertices[u].stars()),
                                            static_cast<std::uint32_t>(g.vertices[u].ones())};
                        if (u != v && (brute::points_of(a, nn) & brute::points_of(b, nn)))
                            expected.push_back(static_cast<std::uint32_t>(u));
                    }
                    CHECK(g.adjacency[v] == expected);
                }
            }
        }
}

TEST_CASE("families with no edges between them are independent") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int attempt = 0; checked < 100 && attempt < 10000; ++attempt) {
        const unsigned nn = 2 + attempt % 2;
        std::uniform_int_distribution<unsigned> rd(0, nn - 1);
        const unsigned r1 = rd(rng), r2 = rd(rng);
        const auto c1 = all_subcubes(nn, r1), c2 = all_subcubes(nn, r2);
        std::vector<std::uint64_t> f1, f2;
        std::uint64_t used = 0;
        for (const auto& c : c1)
            if (rng() % 3 == 0) {
                const auto pts = brute::points_of({static_cast<std::uint32_t>(c.stars()),
                                                   static_cast<std::uint32_t>(c.ones())}, nn);
                f1.push_back(pts);
                used |= pts;
            }
        for (const auto& c : c2) {
            const auto pts = brute::points_of({static_cast<std::uint32_t>(c.stars()),
                                               static_cast<std::uint32_t>(c.ones())}, nn);
            if (!(pts & used) && rng() % 2 == 0) f2.push_back(pts);
        }
        if (f1.empty() || f2.empty()) continue;
        ++checked;
        // Joint law of the indicator vectors over all 2^(2^n) subsets.
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
        std::map<std::uint64_t, std::uint64_t> m1, m2;
        const std::uint64_t subsets = std::uint64_t{1} << (1u << nn);
        for (std::uint64_t S = 0; S < subsets; ++S) {
            std::uint64_t a = 0, b = 0;
            for (std::size_t i = 0; i < f1.size(); ++i) a |= std::uint64_t((S & f1[i]) == f1[i]) << i;
            for (std::size_t i = 0; i < f2.size(); ++i) b |= std::uint64_t((S & f2[i]) == f2[i]) << i;
            ++joint[{a, b}];
            ++m1[a];
            ++m2[b];
        }
        bool factorizes = true;
        for (const auto& [a, ca] : m1)
            for (const auto& [b, cb] : m2) {
                auto it = joint.find({a, b});
                const std::uint64_t cab = it == joint.end() ? 0 : it->second;
                factorizes = factorizes && cab * subsets == ca * cb;
            }
        CHECK(factorizes);
    }
    CHECK(checked == 100);
}

TEST_CASE("ratio condition") {
    for (unsigned nn = 6; nn <= 30; ++nn) {
        const auto jr = janson_ratio(nn, 0, 3);
        const HighPrecision closed = 2 * boost::multiprecision::pow(HighPrecision(2), -HighPrecision(nn) / 6);
        CHECK(boost::multiprecision::abs(jr.ratio - closed) < HighPrecision("1e-40"));
    }
    CHECK(boost::multiprecision::abs(janson_ratio(6, 0, 3).ratio - 1) < HighPrecision("1e-40"));

    HighPrecision prev = janson_ratio(4, 1, 3).ratio;
    for (unsigned nn = 5; nn <= 24; ++nn) {
        const auto jr = janson_ratio(nn, 1, 3);
        CHECK(jr.ratio < prev);
        prev = jr.ratio;
    }
    CHECK(prev < 1);

    const auto small = janson_ratio(8, 2, 3), large = janson_ratio(14, 2, 3);
    CHECK(small.degree_from_graph);
    CHECK(!large.degree_from_graph);
    CHECK(small.max_degree == degree_formula(8, 2));
    CHECK(large.max_degree == large.degree_bound);
    CHECK(small.ratio <= small.ratio_with_bound);

    CHECK_THROWS_AS(janson_ratio(3, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(janson_ratio(6, 1, 0), std::invalid_argument);
}
