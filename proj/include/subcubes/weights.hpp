#pragma once
// Weight accumulation over (kernel, set partition) pairs: the inner loop of the moment engine.
//
// For every kernel K with multiplicity w and every partition P of its rows, the pair contributes w to
// cell (m(P), v(K,P)), where v is the total number of kernel points covered block by block.
// accumulate_serial is the reference; accumulate_parallel must produce identical tables.

#include <cstdint>
#include <span>
#include <vector>

#include "subcubes/cubes.hpp"

namespace subcubes {

struct WeightedKernel {
    KernelRows rows;
    Count multiplicity;
};

/// Exact tallies indexed by (number of blocks m, covered volume v).
class WeightTable {
public:
    WeightTable(unsigned k, unsigned max_volume);

    unsigned k() const { return k_; }
    unsigned max_volume() const { return max_v_; }
    Count at(unsigned m, unsigned v) const { return cells_[index(m, v)]; }
    void add(unsigned m, unsigned v, Count w) { cells_[index(m, v)] += w; }
    void merge(const WeightTable& o);

    friend bool operator==(const WeightTable&, const WeightTable&) = default;

private:
    std::size_t index(unsigned m, unsigned v) const { return std::size_t{m} * (max_v_ + 1) + v; }

    unsigned k_;
    unsigned max_v_;
    std::vector<Count> cells_;
};

void accumulate_serial(std::span<const WeightedKernel> kernels, std::span<const SetPartition> partitions,
                       WeightTable& table);

/// OpenMP version; threads <= 0 uses the runtime default. Falls back to the serial loop without OpenMP.
void accumulate_parallel(std::span<const WeightedKernel> kernels, std::span<const SetPartition> partitions,
                         WeightTable& table, int threads = 0);

/// Whether the library was built with OpenMP.
bool openmp_enabled();

}  // namespace subcubes
