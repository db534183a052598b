#include "jetnoether/noether.hpp"

#include "jetnoether/errors.hpp"

namespace jetnoether {

std::optional<FluxTuple> check_variational_symmetry(const Generator& g, const Expression& l) {
    Expression r = prolong_apply(g, l) + l * xi_divergence(g) +
                   Expression::from_terms(g.space, {}); // pin the space even when zero
    if (!is_total_divergence(r)) return std::nullopt;
    return reconstruct_fluxes(r);
}

namespace {

/// (-D)_J applied to e.
Expression minus_d_multi(const Expression& e, const MultiIndex& j) {
    Expression r = total_derivative_multi(e, j);
    return j.order() % 2 == 0 ? r : -r;
}

/// Common body of the two extension formulas: phi_*^a = base^a - sum_{b,J}
/// (-D)_J[ w^b K^J_{ba} ] - w^a D_i xi^i, with w the dummy-side weight.
std::vector<Expression> extension_phi_star(const Generator& g, const DiffSystem& sys,
                                           const KMatrixSet& k,
                                           const std::vector<Expression>& base,
                                           const std::vector<Expression>& weight) {
    std::size_t q = sys.size();
    Expression div_xi = xi_divergence(g);
    std::vector<Expression> phi_star;
    for (std::size_t a = 0; a < q; ++a) {
        Expression ps = base[a];
        for (const auto& [j, mat] : k.matrices)
            for (std::size_t b = 0; b < q; ++b) {
                if (mat[b][a].is_zero()) continue;
                ps -= minus_d_multi(weight[b] * mat[b][a], j);
            }
        ps -= weight[a] * div_xi;
        phi_star.push_back(ps);
    }
    return phi_star;
}

std::vector<Expression> dummy_minus_original(const SpacePtr& sp) {
    std::size_t p = sp->num_independent();
    std::vector<Expression> w;
    for (std::size_t a = 0; a < sp->num_fields(); ++a)
        w.push_back(Expression::from_atom(sp, Atom::jet((int)a, true, MultiIndex(p))) -
                    Expression::from_atom(sp, Atom::jet((int)a, false, MultiIndex(p))));
    return w;
}

std::vector<Expression> dummy_only(const SpacePtr& sp) {
    std::size_t p = sp->num_independent();
    std::vector<Expression> w;
    for (std::size_t a = 0; a < sp->num_fields(); ++a)
        w.push_back(Expression::from_atom(sp, Atom::jet((int)a, true, MultiIndex(p))));
    return w;
}

} // namespace

Generator extend_generic(const Generator& g, const DiffSystem& sys, const KOptions& opts) {
    KMatrixSet k = extract_K(g, sys, opts);
    Generator y = g;
    y.phi_star = extension_phi_star(g, sys, k, g.phi, dummy_minus_original(sys.space()));
    Expression lhat = ModifiedLagrangian::generic(sys).lagrangian();
    if (!check_variational_symmetry(y, lhat))
        throw Error("internal: generic extension failed the invariance criterion");
    return y;
}

Generator extend_balanced(const Generator& g, const ModifiedLagrangian& ml,
                          const KOptions& opts) {
    if (!check_variational_symmetry(g, ml.balance()))
        throw BalanceNotInvariant("the balance variational problem is not invariant "
                                  "under the given generator");
    KMatrixSet k = extract_K(g, ml.system(), opts);
    std::vector<Expression> zeros(ml.system().size());
    Generator y = g;
    y.phi_star = extension_phi_star(g, ml.system(), k, zeros, dummy_only(ml.system().space()));
    if (!check_variational_symmetry(y, ml.lagrangian()))
        throw Error("internal: balanced extension failed the invariance criterion");
    return y;
}

std::string to_string(Triviality t) {
    switch (t) {
    case Triviality::Nontrivial: return "nontrivial";
    case Triviality::TrivialKind1: return "trivial-kind-1";
    case Triviality::TrivialKind2: return "trivial-kind-2";
    }
    return "?";
}

ConservationLaw noether_law(const Generator& y, const ModifiedLagrangian& ml) {
    const Expression& lhat = ml.lagrangian();
    if (!check_variational_symmetry(y, lhat))
        throw Error("generator does not satisfy the invariance criterion for the Lagrangian");
    ConservationLaw law;
    law.q = characteristic(y);
    Expression rhs = Expression::from_terms(y.space, {});
    for (std::size_t a = 0; a < ml.system().size(); ++a) {
        rhs += law.q.original[a] * euler_operator(lhat, FieldRef{(int)a, false});
        if (law.q.dummy)
            rhs += (*law.q.dummy)[a] * euler_operator(lhat, FieldRef{(int)a, true});
    }
    law.p = reconstruct_fluxes(rhs);
    law.residual = divergence(law.p) - rhs;
    if (!law.residual.is_zero()) throw Error("internal: Noether residual is nonzero");
    if (divergence(law.p).is_zero())
        law.triviality = Triviality::TrivialKind2;
    return law;
}

ConservationLaw substitute_dummy(const ConservationLaw& law, const ModifiedLagrangian& ml) {
    const DiffSystem& sys = ml.system();
    const SubstitutionRules& rules = ml.substitution();
    ConservationLaw out;
    out.provenance = law.provenance;
    out.p.space = law.p.space;
    for (const auto& c : law.p.components) out.p.components.push_back(substitute(c, rules));
    for (std::size_t a = 0; a < sys.size(); ++a) {
        Expression folded = -law.q.original[a];
        if (law.q.dummy) folded += (*law.q.dummy)[a];
        out.q.original.push_back(substitute(folded, rules));
    }
    Expression residual = divergence(out.p);
    for (std::size_t a = 0; a < sys.size(); ++a)
        residual -= out.q.original[a] * sys.equation(a);
    out.residual = residual;
    if (!residual.is_zero())
        throw Error("substituted law does not close against the original system; "
                    "the modified Lagrangian is not strictly self-adjoint under "
                    "the chosen substitution");
    out.triviality = classify_triviality(out.q.original, out.p, sys);
    return out;
}

bool is_trivial_characteristic(const std::vector<Expression>& q, const DiffSystem& sys) {
    for (const auto& e : q) {
        if (e.is_zero()) continue;
        if (!reduce_on_solutions(e, sys).is_zero()) return false;
    }
    return true;
}

Triviality classify_triviality(const std::vector<Expression>& q, const FluxTuple& p,
                               const DiffSystem& sys) {
    if (!is_trivial_characteristic(q, sys)) return Triviality::Nontrivial;
    if (divergence(p).is_zero()) return Triviality::TrivialKind2;
    return Triviality::TrivialKind1;
}

ConservationLaw normalize_law_content(const ConservationLaw& law) {
    Rational content(0);
    for (const auto& e : law.q.original)
        for (const auto& [m, c] : e.terms()) content = rational_gcd(content, c);
    if (law.q.dummy)
        for (const auto& e : *law.q.dummy)
            for (const auto& [m, c] : e.terms()) content = rational_gcd(content, c);
    if (content.is_zero()) return law;
    // strip the integer overcount the dummy fold can introduce, but never
    // scale a naturally fractional characteristic up
    if (content < Rational(1)) content = Rational(1);
    for (const auto& e : law.q.original) {
        if (e.is_zero()) continue;
        if (e.terms().begin()->second.is_negative()) content = -content;
        break;
    }
    ConservationLaw out = law;
    auto scale = [&](Expression& e) { e = e / content; };
    for (auto& e : out.q.original) scale(e);
    if (out.q.dummy)
        for (auto& e : *out.q.dummy) scale(e);
    for (auto& e : out.p.components) scale(e);
    out.residual = out.residual / content;
    return out;
}

} // namespace jetnoether
