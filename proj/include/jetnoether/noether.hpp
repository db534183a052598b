#pragma once

#include <optional>
#include <string>

#include "jetnoether/lagrangian.hpp"

namespace jetnoether {

/// Divergence invariance: returns A with pr X(L) + L D_i xi^i = Div A when
/// the left-hand side is a total divergence, otherwise nullopt.
std::optional<FluxTuple> check_variational_symmetry(const Generator& g, const Expression& l);

/// Extends a symmetry of the system to a variational symmetry of the generic
/// modified Lagrangian:
///   phi_*^a = phi^a - (-D)_J[(v^b - u^b) K^J_{ba}] - (v^a - u^a) D_i xi^i.
/// The invariance criterion for the returned generator is verified before
/// returning.
Generator extend_generic(const Generator& g, const DiffSystem& sys, const KOptions& opts = {});

/// Extends a symmetry whose balance variational problem is invariant:
///   phi_*^a = -{ (-D)_J[v^b K^J_{ba}] + v^a D_i xi^i }.
/// Throws BalanceNotInvariant when pr X(L0) + L0 D_i xi^i is not a total
/// divergence.  The invariance of the full Lagrangian is verified.
Generator extend_balanced(const Generator& g, const ModifiedLagrangian& ml,
                          const KOptions& opts = {});

enum class Triviality { Nontrivial, TrivialKind1, TrivialKind2 };

std::string to_string(Triviality t);

/// A conservation law in characteristic form: Div P = sum_f Q^f E_f(L-hat),
/// stored with the verified residual (zero) and a triviality tag.
struct ConservationLaw {
    Characteristics q;
    FluxTuple p;
    Expression residual; // Div P - sum Q . (Euler expressions); zero
    Triviality triviality = Triviality::Nontrivial;
    std::string provenance;
};

/// Noether's construction: forms sum_f Q^f E_f(L-hat) from the generator's
/// characteristics over original and dummy fields and reconstructs its
/// fluxes.  The generator must satisfy the invariance criterion for
/// ml.lagrangian(), which certifies that the right-hand side is a divergence.
ConservationLaw noether_law(const Generator& y, const ModifiedLagrangian& ml);

/// Applies the dummy substitution to a law of the modified Euler-Lagrange
/// equations, folding the characteristic to Q~^a = (-Q^{u^a} + Q^{v^a})|_{v=h}
/// so that Div P|_{v=h} = sum Q~^a F_a against the original system alone.
/// Requires strict self-adjointness of ml for the folded identity to close.
ConservationLaw substitute_dummy(const ConservationLaw& law, const ModifiedLagrangian& ml);

/// Trivial iff every component reduces to zero on solutions.
bool is_trivial_characteristic(const std::vector<Expression>& q, const DiffSystem& sys);

/// Full tag: kind 2 when Div P vanishes identically, kind 1 when the fluxes
/// vanish on solutions (also the fallback for a trivial characteristic whose
/// stored fluxes differ from a vanishing representative by a curl).
Triviality classify_triviality(const std::vector<Expression>& q, const FluxTuple& p,
                               const DiffSystem& sys);

/// Divides characteristics and fluxes by the rational content of Q and fixes
/// the sign so the first nonzero characteristic coefficient is positive; the
/// canonical scale for reporting a law after substitution.
ConservationLaw normalize_law_content(const ConservationLaw& law);

} // namespace jetnoether
