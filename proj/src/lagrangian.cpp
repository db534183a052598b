#include "jetnoether/lagrangian.hpp"

#include <algorithm>

#include "jetnoether/errors.hpp"
#include "jetnoether/linalg.hpp"

namespace jetnoether {

namespace {

Expression dummy_weighted_sum(const DiffSystem& sys) {
    Expression l;
    for (std::size_t a = 0; a < sys.size(); ++a)
        l += Expression::from_atom(sys.space(), Atom::jet((int)a, true,
                                                          MultiIndex(sys.space()->num_independent()))) *
             sys.equation(a);
    return l;
}

Expression original_weighted_sum(const DiffSystem& sys) {
    Expression l;
    for (std::size_t a = 0; a < sys.size(); ++a)
        l += Expression::from_atom(sys.space(), Atom::jet((int)a, false,
                                                          MultiIndex(sys.space()->num_independent()))) *
             sys.equation(a);
    return l;
}

} // namespace

ModifiedLagrangian::ModifiedLagrangian(DiffSystem sys, Expression balance, Expression lagrangian,
                                       bool variational)
    : sys_(std::move(sys)), balance_(std::move(balance)), lagrangian_(std::move(lagrangian)),
      variational_(variational) {
    const SpacePtr& sp = sys_.space();
    std::size_t p = sp->num_independent();
    if (balance_.has_dummy()) throw DummyInBalance("balance function mentions a dummy field");
    if (!variational_) {
        for (std::size_t a = 0; a < sys_.size(); ++a) {
            Expression ev = euler_operator(lagrangian_, FieldRef{(int)a, true});
            if (!(ev - sys_.equation(a)).is_zero())
                throw Error("internal: E_v(L-hat) differs from the original equation");
        }
        for (std::size_t a = 0; a < sys_.size(); ++a)
            subst_.emplace(Atom::jet((int)a, true, MultiIndex(p)),
                           Expression::from_atom(sp, Atom::jet((int)a, false, MultiIndex(p))));
    }
}

ModifiedLagrangian ModifiedLagrangian::formal(DiffSystem sys) {
    Expression l = dummy_weighted_sum(sys);
    return ModifiedLagrangian(std::move(sys), Expression(), std::move(l), false);
}

ModifiedLagrangian ModifiedLagrangian::generic(DiffSystem sys) {
    Expression balance = -original_weighted_sum(sys);
    Expression l = dummy_weighted_sum(sys) + balance;
    return ModifiedLagrangian(std::move(sys), std::move(balance), std::move(l), false);
}

ModifiedLagrangian ModifiedLagrangian::with_balance(DiffSystem sys, Expression balance) {
    if (balance.has_dummy()) throw DummyInBalance("balance function mentions a dummy field");
    Expression l = dummy_weighted_sum(sys) + balance;
    return ModifiedLagrangian(std::move(sys), std::move(balance), std::move(l), false);
}

ModifiedLagrangian ModifiedLagrangian::variational(DiffSystem sys, Expression lagrangian) {
    if (lagrangian.has_dummy())
        throw DummyInBalance("a variational problem's Lagrangian cannot mention dummies");
    for (std::size_t a = 0; a < sys.size(); ++a) {
        Expression el = euler_operator(lagrangian, FieldRef{(int)a, false});
        if (!Expression::parameter_monomial_ratio(el, sys.equation(a)))
            throw Error("Euler-Lagrange expression of field " + std::to_string(a) +
                        " is not a constant multiple of the declared equation");
    }
    Expression balance = lagrangian;
    return ModifiedLagrangian(std::move(sys), std::move(balance), std::move(lagrangian), true);
}

ModifiedLagrangian ModifiedLagrangian::with_substitution(SubstitutionRules rules) const {
    for (const auto& [key, value] : rules) {
        if (!key.is_jet() || !key.dummy || !key.deriv.is_zero())
            throw NonBaseSubstitution("dummy substitution must map base dummy variables");
        if (value.has_dummy())
            throw Error("dummy substitution target must depend on (x,[u]) only");
    }
    ModifiedLagrangian ml = *this;
    ml.subst_ = std::move(rules);
    return ml;
}

std::vector<Expression> adjoint_system(const ModifiedLagrangian& ml) {
    std::vector<Expression> adj;
    for (std::size_t a = 0; a < ml.system().size(); ++a)
        adj.push_back(euler_operator(ml.lagrangian(), FieldRef{(int)a, false}));
    return adj;
}

SelfAdjointnessReport check_self_adjointness(const ModifiedLagrangian& ml) {
    const DiffSystem& sys = ml.system();
    std::size_t q = sys.size();
    SelfAdjointnessReport rep;
    rep.adjoint = adjoint_system(ml);
    rep.strict = true;
    rep.lenient = true;
    std::vector<std::vector<Rational>> mu_rows;
    for (std::size_t a = 0; a < q; ++a) {
        Expression r = substitute(rep.adjoint[a], ml.substitution());
        rep.substituted.push_back(r);
        if ((r + sys.equation(a)).is_zero()) {
            rep.classes.push_back(AdjointClass::MinusOriginal);
            std::vector<Rational> row(q, Rational(0));
            row[a] = Rational(-1);
            mu_rows.push_back(std::move(row));
            continue;
        }
        rep.strict = false;
        auto coeffs = linear_match(r, sys.equations());
        if (coeffs && std::any_of(coeffs->begin(), coeffs->end(),
                                  [](const Rational& c) { return !c.is_zero(); })) {
            rep.classes.push_back(AdjointClass::ConstantMultiple);
            mu_rows.push_back(std::move(*coeffs));
            continue;
        }
        rep.lenient = false;
        mu_rows.emplace_back(q, Rational(0));
        if (sys.has_solved_form() && reduce_on_solutions(r, sys).is_zero())
            rep.classes.push_back(AdjointClass::ZeroOnSolutions);
        else
            rep.classes.push_back(AdjointClass::Fail);
    }
    rep.mu = std::move(mu_rows);
    if (rep.lenient && matrix_rank(rep.mu) < q) rep.lenient = false;
    if (rep.strict) rep.lenient = true;
    return rep;
}

bool balance_equivalent(const Expression& l0a, const Expression& l0b) {
    if (l0a.has_dummy() || l0b.has_dummy())
        throw DummyInBalance("balance functions cannot mention dummy fields");
    return is_total_divergence(l0a - l0b);
}

} // namespace jetnoether
