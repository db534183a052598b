#pragma once

#include <vector>

#include "jetnoether/system.hpp"

namespace jetnoether {

/// L-hat = sum_a v^a F_a + L0 with a dummy substitution (default v = u).
/// Construction guarantees E_{v^a}(L-hat) = F_a and that the balance is free
/// of dummy fields.
class ModifiedLagrangian {
public:
    static ModifiedLagrangian formal(DiffSystem sys);
    static ModifiedLagrangian generic(DiffSystem sys);
    static ModifiedLagrangian with_balance(DiffSystem sys, Expression balance);
    /// An ordinary variational problem: lagrangian = L(x,[u]), no dummy part.
    static ModifiedLagrangian variational(DiffSystem sys, Expression lagrangian);

    const DiffSystem& system() const { return sys_; }
    const Expression& balance() const { return balance_; }
    const Expression& lagrangian() const { return lagrangian_; }
    const SubstitutionRules& substitution() const { return subst_; }
    bool is_variational_problem() const { return variational_; }

    /// Overrides the default v = u substitution with v^a = h^a(x,[u]).
    ModifiedLagrangian with_substitution(SubstitutionRules rules) const;

private:
    ModifiedLagrangian(DiffSystem sys, Expression balance, Expression lagrangian,
                       bool variational);

    DiffSystem sys_;
    Expression balance_;
    Expression lagrangian_;
    SubstitutionRules subst_;
    bool variational_ = false;
};

/// Modified adjoint system F-hat*_a = E_{u^a}(L-hat).
std::vector<Expression> adjoint_system(const ModifiedLagrangian& ml);

/// Per-equation classification of the substituted adjoint r_a.
enum class AdjointClass { MinusOriginal, ConstantMultiple, ZeroOnSolutions, Fail };

struct SelfAdjointnessReport {
    std::vector<Expression> adjoint;       // F-hat*_a
    std::vector<Expression> substituted;   // r_a = F-hat*_a |_{v=h}
    std::vector<AdjointClass> classes;
    std::vector<std::vector<Rational>> mu; // r_a = sum_b mu_ab F_b when matched
    bool strict = false;                   // every r_a = -F_a
    bool lenient = false;                  // constant invertible recombination

    bool verdict(bool strict_mode) const { return strict_mode ? strict : lenient; }
};

/// Applies the dummy substitution to the adjoint system and checks whether it
/// reduces to the original system.  Strict mode demands r_a = -F_a exactly;
/// the lenient verdict accepts any invertible constant recombination.
SelfAdjointnessReport check_self_adjointness(const ModifiedLagrangian& ml);

/// True iff the two balance functions differ by a total divergence (and
/// therefore give identical adjoint systems).
bool balance_equivalent(const Expression& l0a, const Expression& l0b);

} // namespace jetnoether
