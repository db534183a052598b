#pragma once

#include <optional>
#include <vector>

#include "jetnoether/expr.hpp"

namespace jetnoether {

/// Total derivative D_i: shifts jet atoms by one derivative in direction i,
/// differentiates explicit x^i dependence and parameter-functions of x^i.
Expression total_derivative(const Expression& e, std::size_t i);

/// D_J = D_1^{j_1} ... D_p^{j_p}; the order of application is immaterial.
Expression total_derivative_multi(const Expression& e, const MultiIndex& j);

/// Euler operator E_f(e) = sum_J (-D)_J  d e / d f_J over the jet atoms of
/// the field occurring in e.  Annihilates total divergences.
Expression euler_operator(const Expression& e, FieldRef f);

/// Vector field xi^i d/dx^i + phi^a d/du^a (+ phi_*^a d/dv^a when present).
struct Generator {
    SpacePtr space;
    std::vector<Expression> xi;                        // size p
    std::vector<Expression> phi;                       // size q
    std::optional<std::vector<Expression>> phi_star;   // size q

    bool has_dummy_part() const { return phi_star.has_value(); }
};

/// Characteristics Q^a = phi^a - xi^i u^a_i, plus the dummy block
/// Q^{v^a} = phi_*^a - xi^i v^a_i when phi_star is present.
struct Characteristics {
    std::vector<Expression> original;              // size q
    std::optional<std::vector<Expression>> dummy;  // size q
};

Characteristics characteristic(const Generator& g);

/// Prolonged action pr X(e) = xi^i D_i e + sum (D_J Q^a) de/du^a_J
/// (+ the dummy sum when phi_star is present).
Expression prolong_apply(const Generator& g, const Expression& e);

/// Sum of divergences D_i xi^i of the generator's base coefficients.
Expression xi_divergence(const Generator& g);

/// Commutator [g, h] of two point generators (coefficients in (x, u)).
Generator commutator(const Generator& g, const Generator& h);

/// p-tuple of fluxes, one component per independent variable.
struct FluxTuple {
    SpacePtr space;
    std::vector<Expression> components;

    static FluxTuple zero(SpacePtr sp);
};

/// Div P = sum_i D_i P^i.
Expression divergence(const FluxTuple& p);

/// Euler-annihilation test: true iff E_f(e) = 0 for every original and
/// dummy field.  Valid on the polynomial class (trivial vertical cohomology).
bool is_total_divergence(const Expression& e);

/// Inverts the total divergence: returns P with Div P = e exactly (verified
/// before return).  The jet-dependent part goes through the vertical homotopy
/// with base point u = 0, v = 0; the residual x-part is integrated along the
/// last independent variable first.  Throws NotADivergence when the
/// precondition fails and HomotopyDegenerate when the x-part has no closed
/// form in the expression class.
FluxTuple reconstruct_fluxes(const Expression& e);

/// Single-direction inverse: sigma with D_i sigma = e, or nullopt when e is
/// not a total derivative in direction i within the expression class.
std::optional<Expression> reconstruct_flux_1d(const Expression& e, std::size_t i);

/// True iff e = D_i sigma for some sigma in the expression class.
inline bool is_exact_in_direction(const Expression& e, std::size_t i) {
    return reconstruct_flux_1d(e, i).has_value();
}

} // namespace jetnoether
