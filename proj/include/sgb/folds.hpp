#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace sgb {

/// Record-level fold assignment; every window of a record inherits the
/// record's fold, which keeps overlapping windows out of each other's
/// train/test sides.
struct FoldAssignment {
    int k = 0;
    std::unordered_map<std::uint64_t, int> groups;

    int fold_of(std::uint64_t record_id) const { return groups.at(record_id); }
};

/// Deterministic shuffled split of the record ids into k folds whose
/// sizes differ by at most one. Throws PreconditionError with fewer
/// records than folds.
FoldAssignment assign_folds(std::vector<std::uint64_t> record_ids, int k,
                            std::uint64_t seed);

} // namespace sgb
