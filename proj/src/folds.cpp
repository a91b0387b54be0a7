#include "sgb/folds.hpp"

#include <algorithm>

#include "sgb/errors.hpp"
#include "sgb/rng.hpp"

namespace sgb {

FoldAssignment assign_folds(std::vector<std::uint64_t> record_ids, int k,
                            std::uint64_t seed) {
    if (k < 1) throw PreconditionError("fold count must be positive");
    std::sort(record_ids.begin(), record_ids.end());
    record_ids.erase(std::unique(record_ids.begin(), record_ids.end()),
                     record_ids.end());
    if (record_ids.size() < static_cast<std::size_t>(k))
        throw PreconditionError("fewer records than folds");

    Rng rng(seed);
    rng.shuffle(record_ids);

    FoldAssignment fa;
    fa.k = k;
    fa.groups.reserve(record_ids.size());
    for (std::size_t i = 0; i < record_ids.size(); ++i)
        fa.groups.emplace(record_ids[i], static_cast<int>(i % static_cast<std::size_t>(k)));
    return fa;
}

} // namespace sgb
