#pragma once

#include <cstddef>
#include <span>

namespace thermorelax {

/// Throws NanDetected on non-finite values and StepRejected on an undershoot
/// below -kRejectionTolerance * max.
void check_step(std::span<const double> values, std::size_t step);

}  // namespace thermorelax
