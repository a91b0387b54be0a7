#include <doctest.h>

#include "sgb/errors.hpp"
#include "sgb/metrics.hpp"
#include "sgb/rng.hpp"

using namespace sgb;

namespace {

/// Straight precision/recall oracle, written the long way.
double oracle_f1_for_class(const ConfusionMatrix& cm, int cls) {
    double tp = 0, predicted = 0, actual = 0;
    for (int a = 0; a < cm.k; ++a) {
        for (int p = 0; p < cm.k; ++p) {
            const double v = static_cast<double>(cm.at(a, p));
            if (a == cls && p == cls) tp += v;
            if (p == cls) predicted += v;
            if (a == cls) actual += v;
        }
    }
    if (predicted == 0.0 || actual == 0.0 || tp == 0.0) {
        // 2tp/(2tp+fp+fn) is zero whenever tp is zero and some
        // prediction or truth exists; fully absent classes score zero too.
        return 0.0;
    }
    const double precision = tp / predicted;
    const double recall = tp / actual;
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace

TEST_CASE("perfect diagonals score 1") {
    ConfusionMatrix fd(2);
    fd.at(0, 0) = 10;
    fd.at(1, 1) = 4;
    CHECK(f1_score(fd, Task::FD) == 1.0);

    ConfusionMatrix fli(4);
    for (int c = 0; c < 4; ++c) fli.at(c, c) = 3;
    CHECK(f1_score(fli, Task::FLI) == 1.0);
}

TEST_CASE("binary f1 hand case") {
    ConfusionMatrix cm(2);
    cm.at(1, 1) = 1; // tp
    cm.at(0, 1) = 1; // fp
    cm.at(1, 0) = 1; // fn
    CHECK(f1_score(cm, Task::FD) == 0.5);
}

TEST_CASE("macro average keeps absent classes in the divisor") {
    ConfusionMatrix cm(4);
    cm.at(0, 0) = 5;
    cm.at(1, 1) = 5;
    cm.at(2, 2) = 5; // class 3 never true, never predicted
    CHECK(f1_score(cm, Task::FLI) == 0.75);
}

TEST_CASE("empty matrix is rejected") {
    ConfusionMatrix cm(2);
    CHECK_THROWS_AS(f1_score(cm, Task::FD), PreconditionError);
    CHECK_THROWS_AS(f1_score(ConfusionMatrix{}, Task::FD), PreconditionError);
}

TEST_CASE("f1 matches the precision/recall oracle on random matrices") {
    Rng rng(404);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = trial % 2 == 0 ? 2 : 4;
        ConfusionMatrix cm(k);
        for (int a = 0; a < k; ++a)
            for (int p = 0; p < k; ++p) cm.at(a, p) = rng.below(20);
        if (cm.total() == 0) cm.at(0, 0) = 1;

        if (k == 2) {
            CHECK(f1_score(cm, Task::FD) ==
                  doctest::Approx(oracle_f1_for_class(cm, 1)).epsilon(1e-12));
        } else {
            double macro = 0.0;
            for (int c = 0; c < 4; ++c) macro += oracle_f1_for_class(cm, c);
            macro /= 4.0;
            CHECK(f1_score(cm, Task::FLI) == doctest::Approx(macro).epsilon(1e-12));
        }
    }
}

TEST_CASE("relative change reference points") {
    CHECK(relative_change_pct(0.443, 0.997) == doctest::Approx(-55.57).epsilon(1e-4));
    CHECK(relative_change_pct(0.900, 0.997) == doctest::Approx(-9.73).epsilon(1e-3));
    CHECK(relative_change_pct(0.75, 0.75) == 0.0);
    CHECK_THROWS_AS(relative_change_pct(0.5, 0.0), PreconditionError);
}
