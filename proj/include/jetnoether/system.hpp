#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetnoether/jet_ops.hpp"

namespace jetnoether {

/// One equation solved for a designated leading jet atom: lead = rhs on
/// solutions.  The lead atom always belongs to an original field.
struct SolvedForm {
    Atom lead;
    Expression rhs;
};

/// A system {F_a = 0} with as many equations as dependent fields, optionally
/// carrying a solved leading-derivative form used to reduce expressions
/// modulo the system.
class DiffSystem {
public:
    DiffSystem(SpacePtr space, std::vector<Expression> equations,
               std::vector<std::optional<SolvedForm>> solved = {}, int reduce_depth = 64);

    /// Solves each equation for the given leading atom (the equation must be
    /// linear in it with an invertible constant/parameter coefficient).
    static DiffSystem with_leads(SpacePtr space, std::vector<Expression> equations,
                                 std::vector<Atom> leads);

    /// Default leading-atom heuristic: highest order, then most derivatives
    /// of the first independent variable, then graded-lex, then field order.
    static Atom pick_lead(const Expression& equation);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return equations_.size(); }
    const Expression& equation(std::size_t a) const { return equations_[a]; }
    const std::vector<Expression>& equations() const { return equations_; }
    bool has_solved_form() const;
    const std::optional<SolvedForm>& solved(std::size_t a) const { return solved_[a]; }
    int reduce_depth() const { return reduce_depth_; }

private:
    void validate() const;

    SpacePtr space_;
    std::vector<Expression> equations_;
    std::vector<std::optional<SolvedForm>> solved_;
    int reduce_depth_;
};

/// Normal form of e modulo the system: every occurrence of a leading atom or
/// a derivative of one is replaced by total derivatives of the solved
/// right-hand side until none remains.  Throws NonTerminating past the depth
/// bound (a symptom of an invalid solved form).
Expression reduce_on_solutions(const Expression& e, const DiffSystem& sys);

/// Linearized symmetry condition: pr X(F_a) = 0 on solutions for every a.
/// The generator must not carry a dummy part.
bool check_linearized_symmetry(const Generator& g, const DiffSystem& sys);

/// Matrices K^J with pr X(F_a) = sum_{b,J} K^J_{ab} D_J F_b identically.
struct KMatrixSet {
    std::map<MultiIndex, std::vector<std::vector<Expression>>> matrices;
    int max_order = 0;

    Expression entry(const MultiIndex& j, std::size_t a, std::size_t b) const {
        auto it = matrices.find(j);
        return it == matrices.end() ? Expression() : it->second[a][b];
    }
    bool empty() const { return matrices.empty(); }
};

struct KOptions {
    int max_order = 2;       // highest |J| tried
    int ansatz_degree = -1;  // -1: (jet degree of pr X(F)) + 1
};

/// Finds K by exact linear matching over a polynomial ansatz in (x,[u]),
/// escalating degree and derivative order from zero; the defining identity is
/// re-verified before returning.  Throws AnsatzExhausted when no solution
/// exists within the bounds.
KMatrixSet extract_K(const Generator& g, const DiffSystem& sys, const KOptions& opts = {});

/// Rationals c with sum_k c_k basis_k = target, by exact coefficient
/// matching; nullopt when no such combination exists.
std::optional<std::vector<Rational>> linear_match(const Expression& target,
                                                  const std::vector<Expression>& basis);

} // namespace jetnoether
