#pragma once

#include "froude/core.hpp"

namespace froude::case_far {

/// Bound for waves far from stagnation (crest height at most theta * r).
/// Solves flow_force(d) = script_S(theta r(d), r(d)) on [0.75, 0.9999] and
/// verifies the sign pattern around the root (fails below, holds above).
/// theta = 1 recovers the Fr < sqrt(2) endpoint exactly.
core::CaseBound far_case_bound(double theta = 0.95);

}  // namespace froude::case_far
