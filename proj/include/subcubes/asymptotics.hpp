#pragma once
// Asymptotic-normality checks: cumulants from moments, limits of scaled central moments, the
// dependency graph of the cube indicators and the ratio condition of the dependency-graph CLT.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "subcubes/cubes.hpp"
#include "subcubes/exactalg.hpp"
#include "subcubes/moments.hpp"

namespace subcubes {

/// 100 significant decimal digits.
using HighPrecision = boost::multiprecision::cpp_dec_float_100;

HighPrecision to_high_precision(const Rational& x);

struct CumulantSeq {
    std::vector<BiPoly> kappas;   // kappas[j - 1] is the j-th cumulant
};

/// kappa_k = m_k - Σ_{j<k} binom(k-1, j-1) kappa_j m_(k-j), for k = 1..K. Needs K <= ms.size().
CumulantSeq moments_to_cumulants(std::span<const BiPoly> ms, unsigned K);

/// Inverse recursion m_k = Σ_{j<=k} binom(k-1, j-1) kappa_j m_(k-j).
std::vector<BiPoly> cumulants_to_moments(const CumulantSeq& c);

/// E[Z^k] for standard normal Z: 0 for odd k, (k-1)!! for even k.
Rational normal_moment(unsigned k);

/// lim P / V^(k/2) as n -> ∞ with 2^n dominating every power of n. Zero when P's leading term is
/// strictly smaller; throws std::domain_error if P outgrows V^(k/2).
Rational leading_ratio_limit(const BiPoly& P, const BiPoly& variance, unsigned k);

/// Limit of E[(X_r - mu)^k] / Var(X_r)^(k/2) at p = 1/2.
Rational scaled_limit(unsigned r, unsigned k, const EngineOptions& options = {});

struct DecayRecord {
    unsigned k;
    int deg_q;       // -1 for an identically zero cumulant
    int deg_n;
    Rational limit;  // lim kappa_k / sigma^k
    bool pass;
};

struct DecayReport {
    unsigned r;
    std::vector<DecayRecord> records;

    bool all_pass() const;
    /// Array of {k, deg_q, deg_n, limit_num, limit_den, pass}.
    std::string to_json() const;
};

/// For 3 <= k <= K, checks kappa_k / sigma^k -> 0 by comparing leading terms against the variance.
DecayReport cumulant_decay_check(unsigned r, unsigned K, const EngineOptions& options = {});
DecayReport cumulant_decay_check(unsigned r, const CumulantSeq& cumulants, const BiPoly& variance);

struct DepGraphStats {
    unsigned n;
    unsigned r;
    std::uint64_t vertex_count;
    std::uint64_t max_degree;       // 1 when the graph has no edges
    std::uint64_t min_degree;
    bool has_edges;
    bool is_regular;
    std::uint64_t degree_bound;     // 2^r binom(n, r)
    HighPrecision sigma;            // sqrt(Var X_{n,r})
    unsigned bound_A = 1;           // |X_C| <= 1
};

/// Graph on all r-subcubes of {0,1}^n with an edge between distinct intersecting cubes.
struct DepGraph {
    std::vector<CubePattern> vertices;
    std::vector<std::vector<std::uint32_t>> adjacency;
    DepGraphStats stats;
};

DepGraph build_dep_graph(unsigned n, unsigned r, std::uint64_t max_vertices = 100'000);

struct JansonRatio {
    unsigned n;
    unsigned r;
    unsigned m;
    mpz_class vertex_count;
    std::uint64_t max_degree;       // the value used in `ratio`
    bool degree_from_graph;         // false: the bound 2^r binom(n,r) was used
    std::uint64_t degree_bound;
    HighPrecision sigma;
    HighPrecision ratio;            // (N/M)^(1/m) M A / sigma
    HighPrecision ratio_with_bound; // same with M = degree_bound
};

/// Requires n >= 2r and positive variance. Uses the exact degree when the graph has at most
/// `graph_limit` vertices.
JansonRatio janson_ratio(unsigned n, unsigned r, unsigned m, std::uint64_t graph_limit = 100'000);

}  // namespace subcubes
