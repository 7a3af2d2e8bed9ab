#include "subcubes/weights.hpp"

#include <stdexcept>

namespace subcubes {

WeightTable::WeightTable(unsigned k, unsigned max_volume)
    : k_(k), max_v_(max_volume), cells_(std::size_t{k + 1} * (max_volume + 1), 0) {}

void WeightTable::merge(const WeightTable& o) {
    if (o.k_ != k_ || o.max_v_ != max_v_) throw std::invalid_argument("WeightTable::merge: shape mismatch");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] += o.cells_[i];
}

void accumulate_serial(std::span<const WeightedKernel> kernels, std::span<const SetPartition> partitions,
                       WeightTable& table) {
    std::uint64_t volumes[256];
    for (const auto& wk : kernels) {
        subset_union_volumes(wk.rows, volumes);
        for (const auto& P : partitions) {
            std::uint64_t v = 0;
            for (auto block : P.blocks) v += volumes[block];
            table.add(P.m(), static_cast<unsigned>(v), wk.multiplicity);
        }
    }
}

}  // namespace subcubes
