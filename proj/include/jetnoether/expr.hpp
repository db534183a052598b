#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "jetnoether/atom.hpp"
#include "jetnoether/rational.hpp"
#include "jetnoether/space.hpp"

namespace jetnoether {

/// Product of atom powers, atoms strictly increasing; the empty product is 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::pair<Atom, int>> factors);

    static Monomial one() { return Monomial(); }
    static Monomial atom(const Atom& a, int exp = 1);

    const std::vector<std::pair<Atom, int>>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }

    Monomial operator*(const Monomial& o) const;
    int exponent_of(const Atom& a) const;
    /// Divides exactly or returns nullopt.
    std::optional<Monomial> divided_by(const Monomial& o) const;

    int degree() const;
    int degree_in_jets() const;
    bool has_jet() const;
    bool has_dummy() const;
    bool parameters_only() const;
    /// True if some parameter-function factor depends on independent variable i.
    bool function_depends_on(const Space& sp, std::size_t i) const;

    static int cmp(const Monomial& a, const Monomial& b);
    bool operator<(const Monomial& o) const { return cmp(*this, o) < 0; }
    bool operator==(const Monomial& o) const { return f_ == o.f_; }

private:
    std::vector<std::pair<Atom, int>> f_;
};

/// Immutable symbolic expression in canonical rational normal form:
/// a polynomial over atoms with exact rational coefficients, divided by a
/// monomial in parameters.  Normalization is maintained by construction, so
/// two expressions denote the same function iff they compare equal.
class Expression {
public:
    Expression() = default; // zero

    static Expression constant(const Rational& c);
    static Expression from_atom(SpacePtr sp, const Atom& a);
    static Expression from_terms(SpacePtr sp, std::map<Monomial, Rational> terms,
                                 Monomial den = Monomial::one());

    const SpacePtr& space() const { return space_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    const Monomial& denominator() const { return den_; }

    bool is_zero() const { return terms_.empty(); }
    std::optional<Rational> as_constant() const;
    /// Nonzero rational times parameter powers (possibly divided by parameter
    /// powers); the invertible elements of the expression class.
    bool is_parameter_monomial() const;

    Expression operator-() const;
    Expression operator+(const Expression& o) const;
    Expression operator-(const Expression& o) const;
    Expression operator*(const Expression& o) const;
    Expression& operator+=(const Expression& o) { return *this = *this + o; }
    Expression& operator-=(const Expression& o) { return *this = *this - o; }
    Expression& operator*=(const Expression& o) { return *this = *this * o; }

    Expression operator*(const Rational& c) const;
    Expression operator/(const Rational& c) const;

    /// Non-negative integer power, expanded.
    Expression pow(int e) const;

    /// Division; the divisor must normalize to a parameter monomial, else
    /// UnsupportedDenominator.
    Expression operator/(const Expression& o) const;

    /// Formal partial derivative treating every distinct atom as a coordinate.
    Expression partial(const Atom& a) const;

    bool operator==(const Expression& o) const;
    bool operator!=(const Expression& o) const { return !(*this == o); }

    /// Distinct atoms of the numerator (the denominator holds parameters only).
    std::set<Atom> atoms() const;
    void for_each_atom(const std::function<void(const Atom&)>& fn) const;
    std::set<Atom> jet_atoms() const;
    /// Jet atoms of one field occurring in the expression.
    std::vector<MultiIndex> jet_orders_of(FieldRef f) const;
    bool has_jets() const;
    bool has_dummy() const;
    bool depends_on_independent(std::size_t i) const;
    int max_degree_in_jets() const;

    /// e1 = c * e2 for an invertible c (rational times parameter powers)?
    static std::optional<Expression> parameter_monomial_ratio(const Expression& e1,
                                                              const Expression& e2);

    /// Simultaneous raw atom replacement (no prolongation); internal helper
    /// for reduction modulo a system.
    Expression replace_atoms(const std::map<Atom, Expression>& repl) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    void reduce_denominator();
    void merge_space(const SpacePtr& other);

    SpacePtr space_;
    std::map<Monomial, Rational> terms_;
    Monomial den_; // parameter atoms with positive exponents only
};

inline Expression operator*(const Rational& c, const Expression& e) { return e * c; }

/// Substitution rules keyed on base jet atoms (zero multi-index) or
/// parameters.  Substituting a base dependent variable implies the prolonged
/// substitution of all of its derivative atoms via total derivatives of the
/// replacement; a derivative key signals NonBaseSubstitution.
using SubstitutionRules = std::map<Atom, Expression>;

Expression substitute(const Expression& e, const SubstitutionRules& rules);

} // namespace jetnoether
