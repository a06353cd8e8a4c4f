#pragma once

#include "sirs/dynamics.hpp"

// Parameter sets used by the presets and the test suites. All share N = 100,
// b = 1 and alpha = beta = 1 unless noted.
namespace sirs::presets {

/// Two endemic systems: a = (0.04, 0.02), c = 0.5. lambda = 2.
ModelParams p1();
/// Endemic + and disease-free -: a = (0.04, 0.008), c = 0.5. lambda = 1.4.
ModelParams p2();
/// lambda < 0: a = (0.012, 0.005), c = 0.5. lambda = -0.15.
ModelParams p3();
/// Proportional: minus = 2 x plus with plus = (0.04, 1, 0.5).
ModelParams p4();
/// b(+)/a(+) >= N: a = (0.008, 0.005), c = 0.5. lambda = -0.35.
ModelParams p5();

}  // namespace sirs::presets
