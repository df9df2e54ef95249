#pragma once

#include <optional>
#include <vector>

#include "kn/rational.hpp"

namespace kn {

// Decides feasibility of { A x = b, x >= 0 } exactly, by a phase-1 simplex
// with Bland's rule (terminates on any input). Returns a feasible point if
// one exists.
std::optional<std::vector<Rational>> simplex_equality_feasible(
    const std::vector<std::vector<Rational>>& a_rows,
    const std::vector<Rational>& b);

} // namespace kn
