#pragma once
// Helpers shared by the serial and OpenMP oracle loops.

#include <cstdint>
#include <span>
#include <vector>

namespace subcubes::detail {

/// All n-bit masks with r bits set, ascending.
std::vector<std::uint64_t> star_masks(unsigned n, unsigned r);

/// Bits b < 64 with (b & D) == 0, for the low six coordinates of D.
std::uint64_t low_base_mask(std::uint64_t D);

/// Σ over star masks D of #{x : x & D == 0, cube (x, D) ⊆ S}, folding S once per coordinate of D.
std::uint64_t count_with_masks(std::span<const std::uint64_t> S, std::span<const std::uint64_t> masks,
                               std::vector<std::uint64_t>& scratch);

/// Each r-subcube of {0,1}^n (n <= 5) as a 2^n-bit point mask.
std::vector<std::uint32_t> point_masks(unsigned n, unsigned r);

void check_subsets_range(unsigned n, bool allow_n5);
void check_subsets_factors(std::span<const unsigned> rs);

}  // namespace subcubes::detail
