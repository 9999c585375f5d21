#pragma once

#include <cstddef>
#include <vector>

#include "camorph/quadnum.hpp"

namespace camorph {

// Solves the dense square system A x = b exactly over Q(sqrt(n)) by Gaussian
// elimination with first-nonzero pivoting. A is row-major m x m. Throws
// std::domain_error on a singular matrix.
std::vector<QuadNum> solve_linear(std::vector<QuadNum> a, std::vector<QuadNum> b);

}  // namespace camorph
