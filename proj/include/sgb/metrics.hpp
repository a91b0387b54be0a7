#pragma once

#include <cstdint>
#include <vector>

namespace sgb {

enum class Task { FD, FLI };

/// Square count matrix indexed [actual][predicted]. Class ids are fixed:
/// FD uses {0: no fault, 1: fault}; FLI uses {0..3} for lines 1..4.
struct ConfusionMatrix {
    int k = 0;
    std::vector<std::uint64_t> counts;

    explicit ConfusionMatrix(int classes = 0)
        : k(classes), counts(static_cast<std::size_t>(classes) * classes, 0) {}

    std::uint64_t& at(int actual, int predicted) {
        return counts[static_cast<std::size_t>(actual) * k + predicted];
    }
    std::uint64_t at(int actual, int predicted) const {
        return counts[static_cast<std::size_t>(actual) * k + predicted];
    }
    std::uint64_t total() const;
};

/// FD: binary F1 with "fault" (class 1) as the positive class.
/// FLI: macro average of the four per-line F1 scores. A class with a zero
/// precision+recall denominator contributes 0 to the average.
/// Throws PreconditionError on an empty matrix.
double f1_score(const ConfusionMatrix& cm, Task task);

/// Percent change of `f1` relative to `baseline_f1` (which must be > 0).
double relative_change_pct(double f1, double baseline_f1);

} // namespace sgb
