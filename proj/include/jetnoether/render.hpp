#pragma once

#include <string>

#include "jetnoether/expr.hpp"

namespace jetnoether {

/// Renders an atom in the DSL expression grammar (u, u_t, u_{xxt}, f''(t)).
std::string render_atom(const Atom& a, const Space& sp);

/// Renders an expression in the DSL grammar; parsing the result back yields
/// an equal expression.
std::string render(const Expression& e, const Space& sp);

} // namespace jetnoether
