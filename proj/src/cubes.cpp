#include "subcubes/cubes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace subcubes {

std::string to_string(Count c) {
    if (c == 0) return "0";
    std::string s;
    while (c) {
        s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
        c /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

// ---------------------------------------------------------------- CubePattern

CubePattern CubePattern::from_masks(unsigned width, std::uint64_t stars, std::uint64_t ones) {
    if (width > max_width) throw std::invalid_argument("CubePattern: width exceeds 64");
    auto full = full_mask(width);
    if ((stars & ~full) || (ones & ~full) || (stars & ones))
        throw std::invalid_argument("CubePattern: masks out of range or overlapping");
    CubePattern p;
    p.width_ = width;
    p.stars_ = stars;
    p.ones_ = ones;
    return p;
}

CubePattern CubePattern::parse(std::string_view text) {
    if (text.size() > max_width) throw std::invalid_argument("CubePattern: pattern longer than 64");
    std::uint64_t stars = 0, ones = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
        switch (text[j]) {
        case '*': stars |= std::uint64_t{1} << j; break;
        case '1': ones |= std::uint64_t{1} << j; break;
        case '0': break;
        default: throw std::invalid_argument("CubePattern: bad letter in '" + std::string(text) + "'");
        }
    }
    return from_masks(static_cast<unsigned>(text.size()), stars, ones);
}

unsigned CubePattern::star_count() const { return static_cast<unsigned>(std::popcount(stars_)); }

Letter CubePattern::at(unsigned column) const {
    if (column >= width_) throw std::out_of_range("CubePattern::at");
    auto bit = std::uint64_t{1} << column;
    if (stars_ & bit) return Letter::star;
    return (ones_ & bit) ? Letter::one : Letter::zero;
}

std::string CubePattern::str() const {
    std::string s(width_, '0');
    for (unsigned j = 0; j < width_; ++j) {
        auto l = at(j);
        s[j] = l == Letter::star ? '*' : (l == Letter::one ? '1' : '0');
    }
    return s;
}

std::optional<CubePattern> pattern_intersect(const CubePattern& p, const CubePattern& p2) {
    if (p.width() != p2.width()) throw std::invalid_argument("pattern_intersect: width mismatch");
    if ((p.ones() & p2.zeros()) || (p.zeros() & p2.ones())) return std::nullopt;
    return CubePattern::from_masks(p.width(), p.stars() & p2.stars(), p.ones() | p2.ones());
}

// ---------------------------------------------------------------- union cardinality

namespace {

struct Meet {
    std::uint64_t stars;
    std::uint64_t ones;
    std::uint64_t zeros;
};

// Signed inclusion–exclusion sum over subsets extending `cur` with patterns from index `from` on.
// Incompatible subsets are pruned together with all their supersets.
__int128 ie_extend(std::span<const CubePattern> ps, std::size_t from, const Meet& cur, int sign) {
    __int128 total = 0;
    for (std::size_t i = from; i < ps.size(); ++i) {
        const auto& p = ps[i];
        if ((cur.ones & p.zeros()) || (cur.zeros & p.ones())) continue;
        Meet next{cur.stars & p.stars(), cur.ones | p.ones(), cur.zeros | p.zeros()};
        total += sign * (__int128{1} << std::popcount(next.stars));
        total += ie_extend(ps, i + 1, next, -sign);
    }
    return total;
}

}  // namespace

std::uint64_t union_cardinality(std::span<const CubePattern> ps, UnionAlgorithm algorithm) {
    if (ps.empty()) throw std::invalid_argument("union_cardinality: empty pattern list");
    unsigned w = ps.front().width();
    for (const auto& p : ps)
        if (p.width() != w) throw std::invalid_argument("union_cardinality: width mismatch");
    if (w > 30) throw std::invalid_argument("union_cardinality: width exceeds 30");

    if (algorithm == UnionAlgorithm::point_enum) {
        std::uint64_t count = 0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
            count += std::any_of(ps.begin(), ps.end(), [x](const CubePattern& p) { return p.contains(x); });
        return count;
    }
    auto full = CubePattern::full_mask(w);
    return static_cast<std::uint64_t>(ie_extend(ps, 0, Meet{full, 0, 0}, 1));
}

// ---------------------------------------------------------------- set partitions

std::vector<SetPartition> enumerate_set_partitions(unsigned k) {
    if (k == 0 || k > KernelRows::max_rows) throw std::invalid_argument("enumerate_set_partitions: need 1 <= k <= 8");
    std::vector<SetPartition> out;
    std::vector<unsigned> rgs(k, 0);
    // Restricted growth strings: rgs[0] = 0, rgs[i] <= 1 + max(rgs[0..i-1]).
    while (true) {
        SetPartition p{k, {}};
        for (unsigned i = 0; i < k; ++i) {
            if (rgs[i] == p.blocks.size()) p.blocks.push_back(0);
            p.blocks[rgs[i]] |= 1u << i;
        }
        out.push_back(std::move(p));

        int i = static_cast<int>(k) - 1;
        for (; i > 0; --i) {
            unsigned prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0u);
                break;
            }
        }
        if (i == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------- kernels

KernelMatrix::KernelMatrix(std::vector<CubePattern> rows, std::vector<unsigned> row_star_counts)
    : rows_(std::move(rows)), star_counts_(std::move(row_star_counts)) {
    check_invariants();
}

KernelMatrix::KernelMatrix(const KernelRows& K) {
    rows_.reserve(K.k);
    for (unsigned i = 0; i < K.k; ++i) {
        rows_.push_back(CubePattern::from_masks(K.a, K.stars[i], K.ones[i]));
        star_counts_.push_back(rows_.back().star_count());
    }
    check_invariants();
}

void KernelMatrix::check_invariants() const {
    if (rows_.empty() || rows_.size() > KernelRows::max_rows)
        throw std::invalid_argument("KernelMatrix: need 1..8 rows");
    if (star_counts_.size() != rows_.size()) throw std::invalid_argument("KernelMatrix: star count list size");
    unsigned a = rows_.front().width();
    if (a > KernelRows::max_cols) throw std::invalid_argument("KernelMatrix: more than 32 columns");
    std::uint64_t active = 0;
    unsigned max_r = 0, sum_r = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].width() != a) throw std::invalid_argument("KernelMatrix: ragged rows");
        if (rows_[i].star_count() != star_counts_[i])
            throw std::invalid_argument("KernelMatrix: row star count mismatch");
        active |= rows_[i].stars();
        max_r = std::max(max_r, star_counts_[i]);
        sum_r += star_counts_[i];
    }
    if (active != CubePattern::full_mask(a)) throw std::invalid_argument("KernelMatrix: inactive column");
    if (a < max_r || a > sum_r) throw std::invalid_argument("KernelMatrix: column count out of range");
}

std::vector<std::string> KernelMatrix::serialize() const {
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(r.str());
    return out;
}

KernelRows KernelMatrix::compact() const {
    KernelRows K;
    K.k = k();
    K.a = a();
    for (unsigned i = 0; i < K.k; ++i) {
        K.stars[i] = static_cast<std::uint32_t>(rows_[i].stars());
        K.ones[i] = static_cast<std::uint32_t>(rows_[i].ones());
    }
    return K;
}

namespace {

// One column of a kernel, described over rows: which rows hold a star and which hold a fixed 1.
struct Column {
    std::uint32_t stars;
    std::uint32_t ones;
};

void put_column(KernelRows& K, unsigned j, const Column& c) {
    for (unsigned i = 0; i < K.k; ++i) {
        std::uint32_t bit = 1u << i;
        if (c.stars & bit) K.stars[i] |= 1u << j;
        else if (c.ones & bit) K.ones[i] |= 1u << j;
    }
}

void clear_column(KernelRows& K, unsigned j) {
    std::uint32_t keep = ~(1u << j);
    for (unsigned i = 0; i < K.k; ++i) {
        K.stars[i] &= keep;
        K.ones[i] &= keep;
    }
}

struct Search {
    unsigned k;
    std::array<unsigned, KernelRows::max_rows> need{};
    unsigned need_total = 0;

    // Every remaining column needs at least one star, and a row cannot take two stars in one column.
    bool feasible(unsigned remaining_cols) const {
        if (need_total < remaining_cols) return false;
        for (unsigned i = 0; i < k; ++i)
            if (need[i] > remaining_cols) return false;
        return true;
    }
    void take(std::uint32_t stars, unsigned times) {
        for (unsigned i = 0; i < k; ++i)
            if (stars >> i & 1u) need[i] -= times;
        need_total -= times * static_cast<unsigned>(std::popcount(stars));
    }
    void give(std::uint32_t stars, unsigned times) {
        for (unsigned i = 0; i < k; ++i)
            if (stars >> i & 1u) need[i] += times;
        need_total += times * static_cast<unsigned>(std::popcount(stars));
    }
    unsigned max_take(std::uint32_t stars) const {
        unsigned m = ~0u;
        for (unsigned i = 0; i < k; ++i)
            if (stars >> i & 1u) m = std::min(m, need[i]);
        return m;
    }
};

// ------------------------------------------ exhaustive: all concrete columns, column by column

void exhaustive_rec(const std::vector<Column>& types, Search& s, KernelRows& K, unsigned j, const KernelSink& sink) {
    if (j == K.a) {
        sink(K, 1);
        return;
    }
    for (const auto& c : types) {
        if (s.max_take(c.stars) == 0) continue;
        s.take(c.stars, 1);
        if (s.feasible(K.a - j - 1)) {
            put_column(K, j, c);
            exhaustive_rec(types, s, K, j + 1, sink);
            clear_column(K, j);
        }
        s.give(c.stars, 1);
    }
}

// ------------------------------------------ orbits: multisets of column classes

// Column classes modulo a 0/1 flip: the lowest fixed row of a class always holds 0.
struct ColumnClasses {
    unsigned k;
    std::vector<Column> cls;
    std::vector<std::uint8_t> flippable;       // 1 when the class has a fixed entry (orbit of size 2)
    std::vector<std::uint32_t> stars_from;     // union of star masks of classes t..end
    std::vector<std::size_t> next_mask;        // first class after t with a different star mask
    std::vector<std::uint16_t> index;          // [stars << k | ones] -> class index

    explicit ColumnClasses(unsigned rows) : k(rows) {
        std::uint32_t full = (1u << k) - 1;
        index.assign(std::size_t{1} << (2 * k), 0xFFFF);
        for (std::uint32_t S = 1; S <= full; ++S) {
            std::uint32_t F = full & ~S;
            for (std::uint32_t ones = F;; ones = (ones - 1) & F) {
                if (F == 0 || !(ones & (F & -F))) {
                    index[(std::size_t{S} << k) | ones] = static_cast<std::uint16_t>(cls.size());
                    cls.push_back({S, ones});
                    flippable.push_back(F != 0);
                }
                if (ones == 0) break;
            }
        }
        stars_from.assign(cls.size() + 1, 0);
        for (std::size_t t = cls.size(); t-- > 0;) stars_from[t] = stars_from[t + 1] | cls[t].stars;
        next_mask.assign(cls.size(), cls.size());
        for (std::size_t t = cls.size(); t-- > 0;)
            next_mask[t] = (t + 1 < cls.size() && cls[t + 1].stars == cls[t].stars) ? next_mask[t + 1] : t + 1;
    }

    std::uint16_t canonical_index(std::uint32_t stars, std::uint32_t ones) const {
        std::uint32_t F = ((1u << k) - 1) & ~stars;
        if (F && (ones & (F & -F))) ones = F & ~ones;
        return index[(std::size_t{stars} << k) | ones];
    }
};

std::uint32_t permute_bits(std::uint32_t mask, const std::vector<unsigned>& perm) {
    std::uint32_t out = 0;
    for (unsigned i = 0; i < perm.size(); ++i)
        if (mask >> i & 1u) out |= 1u << perm[i];
    return out;
}

struct RowSymmetry {
    std::vector<unsigned> perm;              // row i -> row perm[i]
    std::vector<std::uint16_t> class_map;    // induced map on column classes
};

// All row permutations preserving star counts, identity first.
std::vector<RowSymmetry> row_symmetries(std::span<const unsigned> rs, const ColumnClasses& cc) {
    unsigned k = static_cast<unsigned>(rs.size());
    std::vector<unsigned> perm(k);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<RowSymmetry> out;
    do {
        bool ok = true;
        for (unsigned i = 0; ok && i < k; ++i) ok = rs[perm[i]] == rs[i];
        if (!ok) continue;
        RowSymmetry sym{perm, std::vector<std::uint16_t>(cc.cls.size())};
        for (std::size_t t = 0; t < cc.cls.size(); ++t)
            sym.class_map[t] =
                cc.canonical_index(permute_bits(cc.cls[t].stars, perm), permute_bits(cc.cls[t].ones, perm));
        out.push_back(std::move(sym));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Rows with equal star count that may be exchanged, each group listed in increasing row order.
std::vector<std::vector<unsigned>> exchangeable_groups(std::span<const unsigned> rs) {
    std::vector<std::vector<unsigned>> groups;
    std::vector<bool> seen(rs.size(), false);
    for (unsigned i = 0; i < rs.size(); ++i) {
        if (seen[i]) continue;
        std::vector<unsigned> g;
        for (unsigned j = i; j < rs.size(); ++j)
            if (rs[j] == rs[i]) {
                g.push_back(j);
                seen[j] = true;
            }
        if (g.size() > 1) groups.push_back(std::move(g));
    }
    return groups;
}

// Per-row invariant under column permutations, column flips and relabelling of the other rows:
// column (star count, row has star) histogram, then the sorted per-partner agreement profile.
using RowInvariant = std::array<std::uint32_t, 3 * KernelRows::max_rows>;

struct OrbitSearch {
    const ColumnClasses& cc;
    const std::vector<RowSymmetry>& syms;
    const std::vector<std::vector<unsigned>>& groups;
    const KernelSink& sink;
    unsigned a;
    Search s;
    std::vector<std::uint16_t> cols;           // chosen classes, ascending
    std::vector<std::uint16_t> scratch;
    std::vector<std::vector<std::uint16_t>> images;
    std::array<RowInvariant, KernelRows::max_rows> inv{};

    void compute_invariant(unsigned i) {
        const unsigned k = cc.k;
        auto& v = inv[i];
        v.fill(0);
        std::array<std::uint32_t, KernelRows::max_rows> pair{};
        for (auto t : cols) {
            const auto& c = cc.cls[t];
            bool si = c.stars >> i & 1u;
            ++v[2 * (std::popcount(c.stars) - 1) + si];
            for (unsigned j = 0; j < k; ++j) {
                if (j == i) continue;
                bool sj = c.stars >> j & 1u;
                unsigned cat = si && sj ? 0 : si ? 1 : sj ? 2 : ((c.ones >> i ^ c.ones >> j) & 1u) ? 4 : 3;
                pair[j] += 1u << (6 * cat);
            }
        }
        std::uint32_t* tail = v.data() + 2 * KernelRows::max_rows;
        unsigned idx = 0;
        for (unsigned j = 0; j < k; ++j)
            if (j != i) tail[idx++] = pair[j];
        std::sort(tail, tail + idx);
    }

    // Orbit size under row symmetries, or 0 when `cols` is not the canonical representative.
    // Canonical: row invariants non-decreasing inside each exchangeable group, and `cols` minimal among
    // the images under the invariant-preserving subgroup H. The full orbit then has |G| |H x| / |H| members.
    Count row_orbit_size() {
        if (syms.size() <= 1) return 1;
        for (const auto& g : groups) {
            compute_invariant(g[0]);
            for (std::size_t x = 1; x < g.size(); ++x) {
                compute_invariant(g[x]);
                if (inv[g[x]] < inv[g[x - 1]]) return 0;
            }
        }
        images.clear();
        std::size_t h_size = 0;
        for (const auto& sym : syms) {
            bool preserves = true;
            for (unsigned i = 0; preserves && i < cc.k; ++i) preserves = inv[sym.perm[i]] == inv[i];
            if (!preserves) continue;
            ++h_size;
            scratch.resize(cols.size());
            for (std::size_t j = 0; j < cols.size(); ++j) scratch[j] = sym.class_map[cols[j]];
            std::sort(scratch.begin(), scratch.end());
            if (scratch < cols) return 0;
            if (scratch != cols) images.push_back(scratch);
        }
        std::sort(images.begin(), images.end());
        Count h_orbit = 1 + static_cast<Count>(std::unique(images.begin(), images.end()) - images.begin());
        return static_cast<Count>(syms.size()) * h_orbit / h_size;
    }

    void emit() {
        Count row_images = row_orbit_size();
        if (row_images == 0) return;
        // Column permutations and flips: a! / prod(c_t!) * 2^(flippable columns).
        Count mult = 1;
        unsigned placed = 0;
        for (std::size_t j = 0; j < cols.size();) {
            std::size_t e = j;
            while (e < cols.size() && cols[e] == cols[j]) ++e;
            unsigned c = static_cast<unsigned>(e - j);
            for (unsigned x = 1; x <= c; ++x) mult = mult * (placed + x) / x;
            placed += c;
            if (cc.flippable[cols[j]]) mult <<= c;
            j = e;
        }
        mult *= row_images;

        KernelRows K;
        K.k = cc.k;
        K.a = a;
        for (unsigned j = 0; j < a; ++j) put_column(K, j, cc.cls[cols[j]]);
        sink(K, mult);
    }

    // Chooses the next class index >= t that receives at least one column.
    void rec(std::size_t t, unsigned remaining) {
        if (remaining == 0) {
            if (s.need_total == 0) emit();
            return;
        }
        if (!s.feasible(remaining)) return;
        std::uint32_t open = 0;
        for (unsigned i = 0; i < s.k; ++i)
            if (s.need[i]) open |= 1u << i;
        for (std::size_t u = t; u < cc.cls.size();) {
            // Rows still needing stars must be reachable from here on.
            if ((open & cc.stars_from[u]) != open) return;
            const auto& c = cc.cls[u];
            if ((c.stars & open) != c.stars) {
                u = cc.next_mask[u];
                continue;
            }
            unsigned cmax = std::min(remaining, s.max_take(c.stars));
            for (unsigned x = 1; x <= cmax; ++x) {
                s.take(c.stars, 1);
                cols.push_back(static_cast<std::uint16_t>(u));
                rec(u + 1, remaining - x);
            }
            s.give(c.stars, cmax);
            cols.resize(cols.size() - cmax);
            ++u;
        }
    }
};

bool in_range(std::span<const unsigned> rs, unsigned a) {
    unsigned mx = 0, sum = 0;
    for (unsigned r : rs) {
        mx = std::max(mx, r);
        sum += r;
    }
    return a >= mx && a <= sum;
}

}  // namespace

void enumerate_kernels(std::span<const unsigned> rs, unsigned a, KernelMode mode, const KernelSink& sink) {
    if (rs.empty() || rs.size() > KernelRows::max_rows)
        throw std::invalid_argument("enumerate_kernels: need 1..8 rows");
    if (a > KernelRows::max_cols) throw std::invalid_argument("enumerate_kernels: more than 32 columns");
    if (!in_range(rs, a)) return;

    unsigned k = static_cast<unsigned>(rs.size());
    if (a == 0) {
        KernelRows K;
        K.k = k;
        sink(K, 1);
        return;
    }
    Search s{k};
    for (unsigned i = 0; i < k; ++i) {
        s.need[i] = rs[i];
        s.need_total += rs[i];
    }

    if (mode == KernelMode::exhaustive) {
        std::vector<Column> types;
        std::uint32_t full = (1u << k) - 1;
        for (std::uint32_t S = 1; S <= full; ++S) {
            std::uint32_t F = full & ~S;
            for (std::uint32_t ones = F;; ones = (ones - 1) & F) {
                types.push_back({S, ones});
                if (ones == 0) break;
            }
        }
        KernelRows K;
        K.k = k;
        K.a = a;
        exhaustive_rec(types, s, K, 0, sink);
        return;
    }

    ColumnClasses cc(k);
    auto syms = row_symmetries(rs, cc);
    auto groups = exchangeable_groups(rs);
    OrbitSearch os{cc, syms, groups, sink, a, s, {}, {}, {}, {}};
    os.cols.reserve(a);
    os.rec(0, a);
}

std::vector<std::pair<KernelMatrix, Count>> collect_kernels(std::span<const unsigned> rs, unsigned a,
                                                            KernelMode mode) {
    std::vector<std::pair<KernelMatrix, Count>> out;
    enumerate_kernels(rs, a, mode, [&](const KernelRows& K, Count mult) {
        KernelMatrix M(K);
        for (unsigned i = 0; i < K.k; ++i)
            if (M.row_star_counts()[i] != rs[i]) throw std::logic_error("enumerate_kernels: wrong row star count");
        out.emplace_back(std::move(M), mult);
    });
    return out;
}

std::uint64_t kernel_block_volume(const KernelMatrix& K, const SetPartition& P) {
    if (P.k != K.k()) throw std::invalid_argument("kernel_block_volume: partition size differs from row count");
    std::uint64_t v = 0;
    std::vector<CubePattern> block;
    for (auto mask : P.blocks) {
        block.clear();
        for (unsigned i = 0; i < K.k(); ++i)
            if (mask >> i & 1u) block.push_back(K.rows()[i]);
        v += union_cardinality(block);
    }
    return v;
}

void subset_union_volumes(const KernelRows& K, std::span<std::uint64_t> out) {
    const std::size_t subsets = std::size_t{1} << K.k;
    if (out.size() < subsets) throw std::invalid_argument("subset_union_volumes: output too small");
    std::uint32_t full = K.a >= 32 ? ~0u : (1u << K.a) - 1;

    std::array<std::uint32_t, 256> stars, ones, zeros;
    std::array<std::uint8_t, 256> empty;
    std::array<std::int64_t, 256> g;
    stars[0] = full;
    ones[0] = zeros[0] = 0;
    empty[0] = 0;
    g[0] = 0;
    for (std::size_t T = 1; T < subsets; ++T) {
        unsigned i = static_cast<unsigned>(std::countr_zero(T));
        std::size_t rest = T & (T - 1);
        std::uint32_t zi = full & ~K.stars[i] & ~K.ones[i];
        empty[T] = empty[rest] || (ones[rest] & zi) || (zeros[rest] & K.ones[i]);
        stars[T] = stars[rest] & K.stars[i];
        ones[T] = ones[rest] | K.ones[i];
        zeros[T] = zeros[rest] | zi;
        std::int64_t size = empty[T] ? 0 : std::int64_t{1} << std::popcount(stars[T]);
        g[T] = (std::popcount(T) & 1) ? size : -size;
    }
    // Subset sums: out[B] = Σ_{∅≠T⊆B} (−1)^{|T|+1} |∩T|.
    for (unsigned i = 0; i < K.k; ++i)
        for (std::size_t B = 0; B < subsets; ++B)
            if (B >> i & 1u) g[B] += g[B ^ (std::size_t{1} << i)];
    for (std::size_t B = 0; B < subsets; ++B) out[B] = static_cast<std::uint64_t>(g[B]);
}

}  // namespace subcubes
