// selftest.hpp — Invariant suite behind the `selftest` CLI verb

#pragma once

#include <iosfwd>

namespace qbcool {

// Runs every structural invariant check, printing one pass/fail line each.
// Returns the number of failed checks.
int run_selftest(std::ostream& os);

} // namespace qbcool
