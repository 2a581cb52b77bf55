#pragma once

#include "torq/parallel.hpp"
#include "torq/report.hpp"

namespace torq {

/// Reference checks on the built-in curves and fields: the logarithmic
/// spiral and cone loxodrome invariants, field labels, the Euclidean slant
/// branches, the ratio law and the concircular construction. Each check is a
/// residual with its tolerance; printed values that disagree with a direct
/// computation are listed in `diagnostics`.
Report example_suite(ExecPolicy policy = ExecPolicy::parallel);

}  // namespace torq
