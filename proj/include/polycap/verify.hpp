#ifndef POLYCAP_VERIFY_HPP
#define POLYCAP_VERIFY_HPP

#include "polycap/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polycap {

// One invariant suite outcome.  `detail` says what was sampled or, on
// failure, the first offending instance.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs every suite.  level "quick" keeps sample counts small enough for a
// test-runner budget; "full" runs the documented counts.  The seed fixes all
// sampling, so reports are reproducible.
std::vector<CheckResult> run_checks(const std::string& level, std::uint64_t seed = 42);

// Exact convex-hull membership by Caratheodory subset enumeration: x is in
// the hull iff some affinely independent subset of at most dim+1 points
// carries it with nonnegative barycentric weights.  Small point sets only.
bool in_convex_hull(const std::vector<std::vector<Rat>>& points,
                    const std::vector<Rat>& x);

} // namespace polycap

#endif
