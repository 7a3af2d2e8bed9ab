#pragma once
// Subcube patterns over {0,1,*}, kernel matrices and their orbit enumeration, set partitions.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subcubes {

/// Exact counter wide enough for kernel multiplicities summed over all partitions.
using Count = unsigned __int128;

std::string to_string(Count c);

enum class Letter : std::uint8_t { zero, one, star };

/// A subcube of {0,1}^width. Column j is bit j of both masks; `ones` never overlaps `stars`.
class CubePattern {
public:
    static constexpr unsigned max_width = 64;

    CubePattern() = default;
    static CubePattern from_masks(unsigned width, std::uint64_t stars, std::uint64_t ones);
    /// Parses a string over {0,1,*}; character j is column j.
    static CubePattern parse(std::string_view text);

    unsigned width() const { return width_; }
    std::uint64_t stars() const { return stars_; }
    std::uint64_t ones() const { return ones_; }
    std::uint64_t fixed() const { return full_mask(width_) & ~stars_; }
    std::uint64_t zeros() const { return fixed() & ~ones_; }
    unsigned star_count() const;
    Letter at(unsigned column) const;
    bool contains(std::uint64_t point) const { return (point & fixed()) == ones_; }

    std::string str() const;

    friend bool operator==(const CubePattern&, const CubePattern&) = default;

    static std::uint64_t full_mask(unsigned width) {
        return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

private:
    unsigned width_ = 0;
    std::uint64_t stars_ = 0;
    std::uint64_t ones_ = 0;
};

/// C ∩ C', or nullopt when the two cubes disagree on a fixed column. Throws on width mismatch.
std::optional<CubePattern> pattern_intersect(const CubePattern& p, const CubePattern& p2);

enum class UnionAlgorithm { inclusion_exclusion, point_enum };

/// |C_1 ∪ ... ∪ C_k|. Width is limited to 30 columns.
std::uint64_t union_cardinality(std::span<const CubePattern> ps,
                                UnionAlgorithm algorithm = UnionAlgorithm::inclusion_exclusion);

/// Partition of rows {0..k-1}; each block is a row bitmask, blocks ordered by least element.
struct SetPartition {
    unsigned k = 0;
    std::vector<std::uint32_t> blocks;

    unsigned m() const { return static_cast<unsigned>(blocks.size()); }
    friend bool operator==(const SetPartition&, const SetPartition&) = default;
};

/// All partitions of a k-set (k <= 8), in restricted-growth-string order.
std::vector<SetPartition> enumerate_set_partitions(unsigned k);

/// Compact k x a kernel used by the moment engine: per-row star and one masks over a columns.
struct KernelRows {
    static constexpr unsigned max_rows = 8;
    static constexpr unsigned max_cols = 32;

    unsigned k = 0;
    unsigned a = 0;
    std::array<std::uint32_t, max_rows> stars{};
    std::array<std::uint32_t, max_rows> ones{};
};

/// k rows of width a; row i has row_star_counts[i] stars and every column holds a star.
class KernelMatrix {
public:
    KernelMatrix(std::vector<CubePattern> rows, std::vector<unsigned> row_star_counts);
    explicit KernelMatrix(const KernelRows& rows);

    unsigned k() const { return static_cast<unsigned>(rows_.size()); }
    unsigned a() const { return rows_.empty() ? 0 : rows_.front().width(); }
    const std::vector<CubePattern>& rows() const { return rows_; }
    const std::vector<unsigned>& row_star_counts() const { return star_counts_; }

    /// One pattern string per row.
    std::vector<std::string> serialize() const;

    KernelRows compact() const;

private:
    void check_invariants() const;

    std::vector<CubePattern> rows_;
    std::vector<unsigned> star_counts_;
};

enum class KernelMode { exhaustive, orbits };

using KernelSink = std::function<void(const KernelRows&, Count multiplicity)>;

/// Streams every kernel with the given row star counts and exactly a active columns.
/// Exhaustive mode emits each kernel once with multiplicity 1. Orbit mode emits one representative per
/// orbit under column permutations, per-column 0/1 flips and permutations of rows with equal star count,
/// with the orbit size as multiplicity. An out-of-range a yields nothing.
void enumerate_kernels(std::span<const unsigned> rs, unsigned a, KernelMode mode, const KernelSink& sink);

/// Convenience wrapper materializing the stream as KernelMatrix values (invariants checked on emission).
std::vector<std::pair<KernelMatrix, Count>> collect_kernels(std::span<const unsigned> rs, unsigned a,
                                                            KernelMode mode);

/// Σ over blocks B of |∪_{i∈B} row_i|.
std::uint64_t kernel_block_volume(const KernelMatrix& K, const SetPartition& P);

/// For every row subset B (bitmask index), |∪_{i∈B} row_i| by inclusion–exclusion; entry 0 is 0.
/// `out` must hold 2^k entries.
void subset_union_volumes(const KernelRows& K, std::span<std::uint64_t> out);

}  // namespace subcubes
