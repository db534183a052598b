#pragma once

#include <optional>
#include <vector>

#include "jetnoether/rational.hpp"

namespace jetnoether {

/// Solves A x = b exactly over the rationals by Gauss-Jordan elimination.
/// Returns a particular solution with free variables set to zero, or nullopt
/// when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b);

/// Rank of a dense rational matrix.
std::size_t matrix_rank(std::vector<std::vector<Rational>> a);

} // namespace jetnoether
