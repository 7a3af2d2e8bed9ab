#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "oracle_detail.hpp"
#include "subcubes/asymptotics.hpp"
#include "subcubes/oracle.hpp"

namespace subcubes {

namespace {

// Index of x among the submasks of F in ascending order (parallel bit extract).
std::uint64_t compress(std::uint64_t x, std::uint64_t F) {
    std::uint64_t out = 0;
    unsigned bit = 0;
    for (std::uint64_t rest = F; rest; rest &= rest - 1, ++bit)
        if (x & rest & -rest) out |= std::uint64_t{1} << bit;
    return out;
}

HighPrecision sigma_at(unsigned n, unsigned r) {
    Rational v = variance_closed(r).eval_at(n);
    if (v.sign() <= 0) return HighPrecision(0);
    return boost::multiprecision::sqrt(to_high_precision(v));
}

std::uint64_t degree_bound(unsigned n, unsigned r) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, r);
    b <<= r;
    return b.get_ui();
}

}  // namespace

DepGraph build_dep_graph(unsigned n, unsigned r, std::uint64_t max_vertices) {
    if (r > n) throw std::invalid_argument("build_dep_graph: r exceeds n");
    if (n > 30) throw std::invalid_argument("build_dep_graph: n must be at most 30");
    const mpz_class N = subcube_count(n, r);
    if (N > max_vertices)
        throw ResourceAbort("build_dep_graph: " + N.get_str() + " vertices exceed the limit of " +
                            std::to_string(max_vertices));

    DepGraph g;
    g.vertices = all_subcubes(n, r);
    const auto masks = detail::star_masks(n, r);
    const std::uint64_t per_mask = std::uint64_t{1} << (n - r);
    const std::uint64_t full = CubePattern::full_mask(n);
    std::unordered_map<std::uint64_t, std::uint64_t> rank;
    for (std::size_t i = 0; i < masks.size(); ++i) rank.emplace(masks[i], i);

    const auto V = static_cast<std::int64_t>(g.vertices.size());
    g.adjacency.assign(g.vertices.size(), {});
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t v = 0; v < V; ++v) {
        const CubePattern& c = g.vertices[v];
        auto& adj = g.adjacency[v];
        // A cube with star mask D meets c iff it agrees with c where both are fixed; its remaining
        // fixed coordinates (stars of c outside D) are free.
        for (std::size_t i = 0; i < masks.size(); ++i) {
            const std::uint64_t D = masks[i], F = full & ~D, free = c.stars() & F, base = c.ones() & F;
            for (std::uint64_t y = free;; y = (y - 1) & free) {
                const auto id = static_cast<std::uint32_t>(i * per_mask + compress(base | y, F));
                if (id != static_cast<std::uint64_t>(v)) adj.push_back(id);
                if (y == 0) break;
            }
        }
        std::sort(adj.begin(), adj.end());
    }

    auto& s = g.stats;
    s.n = n;
    s.r = r;
    s.vertex_count = g.vertices.size();
    std::uint64_t lo = ~std::uint64_t{0}, hi = 0;
    for (const auto& adj : g.adjacency) {
        lo = std::min<std::uint64_t>(lo, adj.size());
        hi = std::max<std::uint64_t>(hi, adj.size());
    }
    s.has_edges = hi > 0;
    s.is_regular = lo == hi;
    s.min_degree = lo;
    s.max_degree = std::max<std::uint64_t>(hi, 1);
    s.degree_bound = degree_bound(n, r);
    s.sigma = sigma_at(n, r);
    return g;
}

JansonRatio janson_ratio(unsigned n, unsigned r, unsigned m, std::uint64_t graph_limit) {
    if (m == 0) throw std::invalid_argument("janson_ratio: m must be positive");
    if (n < 2 * r) throw std::invalid_argument("janson_ratio: requires n >= 2r");
    JansonRatio out;
    out.n = n;
    out.r = r;
    out.m = m;
    out.vertex_count = subcube_count(n, r);
    out.sigma = sigma_at(n, r);
    if (out.sigma == 0) throw std::domain_error("janson_ratio: variance is zero");
    out.degree_bound = degree_bound(n, r);
    out.degree_from_graph = out.vertex_count <= graph_limit;
    out.max_degree = out.degree_from_graph ? build_dep_graph(n, r, graph_limit).stats.max_degree : out.degree_bound;

    const HighPrecision N(out.vertex_count.get_str());
    auto ratio = [&](std::uint64_t M) {
        const HighPrecision Mh(M);
        return boost::multiprecision::pow(N / Mh, HighPrecision(1) / m) * Mh / out.sigma;
    };
    out.ratio = ratio(out.max_degree);
    out.ratio_with_bound = ratio(out.degree_bound);
    return out;
}

}  // namespace subcubes
