#include "sgb/metrics.hpp"

#include "sgb/errors.hpp"

namespace sgb {

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (std::uint64_t c : counts) t += c;
    return t;
}

namespace {

double class_f1(const ConfusionMatrix& cm, int cls) {
    std::uint64_t tp = cm.at(cls, cls);
    std::uint64_t fp = 0, fn = 0;
    for (int other = 0; other < cm.k; ++other) {
        if (other == cls) continue;
        fp += cm.at(other, cls);
        fn += cm.at(cls, other);
    }
    const std::uint64_t denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

} // namespace

double f1_score(const ConfusionMatrix& cm, Task task) {
    if (cm.k == 0 || cm.total() == 0)
        throw PreconditionError("f1 of an empty confusion matrix");
    if (task == Task::FD) return class_f1(cm, 1);
    double sum = 0.0;
    for (int cls = 0; cls < cm.k; ++cls) sum += class_f1(cm, cls);
    return sum / static_cast<double>(cm.k);
}

double relative_change_pct(double f1, double baseline_f1) {
    if (baseline_f1 <= 0.0)
        throw PreconditionError("relative change against a zero baseline");
    return 100.0 * (f1 - baseline_f1) / baseline_f1;
}

} // namespace sgb
