#include "subcubes/weights.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subcubes {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void accumulate_parallel(std::span<const WeightedKernel> kernels, std::span<const SetPartition> partitions,
                         WeightTable& table, int threads) {
#ifdef _OPENMP
    const auto count = static_cast<std::int64_t>(kernels.size());
    int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nt)
    {
        // Integer tallies: the merge order does not change the result.
        WeightTable local(table.k(), table.max_volume());
        std::uint64_t volumes[256];
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t i = 0; i < count; ++i) {
            const auto& wk = kernels[static_cast<std::size_t>(i)];
            subset_union_volumes(wk.rows, volumes);
            for (const auto& P : partitions) {
                std::uint64_t v = 0;
                for (auto block : P.blocks) v += volumes[block];
                local.add(P.m(), static_cast<unsigned>(v), wk.multiplicity);
            }
        }
#pragma omp critical(subcubes_weight_merge)
        table.merge(local);
    }
#else
    (void)threads;
    accumulate_serial(kernels, partitions, table);
#endif
}

}  // namespace subcubes
