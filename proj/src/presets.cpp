#include "sirs/presets.hpp"

namespace sirs::presets {

namespace {
constexpr double kN = 100.0;
constexpr SwitchRates kSymmetric{1.0, 1.0};
}  // namespace

ModelParams p1() { return {{0.04, 1.0, 0.5}, {0.02, 1.0, 0.5}, kN, kSymmetric}; }
ModelParams p2() { return {{0.04, 1.0, 0.5}, {0.008, 1.0, 0.5}, kN, kSymmetric}; }
ModelParams p3() { return {{0.012, 1.0, 0.5}, {0.005, 1.0, 0.5}, kN, kSymmetric}; }
ModelParams p4() { return {{0.04, 1.0, 0.5}, {0.08, 2.0, 1.0}, kN, kSymmetric}; }
ModelParams p5() { return {{0.008, 1.0, 0.5}, {0.005, 1.0, 0.5}, kN, kSymmetric}; }

}  // namespace sirs::presets
