#pragma once

#include <ostream>

namespace twoenv::cli {

/// Walks the whole exact-identity chain — naive valuation, the $5/$10
/// scenario from all three perspectives, the per-role estimation errors,
/// and the aggregate 1.25 ratio — printing each step and verifying it with
/// exact arithmetic. Returns 0 when every identity holds, 1 otherwise (the
/// first failing identity is named on the last line).
int run_paper_check(std::ostream& out);

}  // namespace twoenv::cli
