#include "jetnoether/jet_ops.hpp"

#include <algorithm>
#include <map>

#include "jetnoether/errors.hpp"

namespace jetnoether {

namespace {

/// Derivative of a single atom in direction i; zero when the atom does not
/// depend on x^i.
Expression atom_derivative(const SpacePtr& sp, const Atom& a, std::size_t i) {
    switch (a.kind) {
    case AtomKind::Independent:
        return a.index == (int)i ? Expression::constant(Rational(1)) : Expression();
    case AtomKind::Jet:
        return Expression::from_atom(sp, Atom::jet(a.index, a.dummy, a.deriv.plus_unit(i)));
    case AtomKind::Parameter:
        return Expression();
    case AtomKind::ParamFunction: {
        const auto& args = sp->function_decl(a.index).args;
        for (std::size_t s = 0; s < args.size(); ++s)
            if (args[s] == i)
                return Expression::from_atom(sp, Atom::param_function(a.index, a.deriv.plus_unit(s)));
        return Expression();
    }
    }
    return Expression();
}

} // namespace

Expression total_derivative(const Expression& e, std::size_t i) {
    const SpacePtr& sp = e.space();
    Expression result = Expression::from_terms(sp, {}); // zero, keeping the space
    for (const auto& [m, c] : e.terms()) {
        const auto& factors = m.factors();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const auto& [a, exp] = factors[k];
            Expression da = atom_derivative(sp, a, i);
            if (da.is_zero()) continue;
            std::vector<std::pair<Atom, int>> rest;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                if (j == k)
                    rest.emplace_back(a, exp - 1);
                else
                    rest.push_back(factors[j]);
            }
            Expression base = Expression::from_terms(sp, {{Monomial(std::move(rest)),
                                                           c * Rational(exp)}},
                                                     e.denominator());
            result += base * da;
        }
    }
    return result;
}

Expression total_derivative_multi(const Expression& e, const MultiIndex& j) {
    Expression r = e;
    for (std::size_t i = 0; i < j.size(); ++i)
        for (int k = 0; k < j[i]; ++k) r = total_derivative(r, i);
    return r;
}

Expression euler_operator(const Expression& e, FieldRef f) {
    Expression r;
    for (const auto& j : e.jet_orders_of(f)) {
        Expression t = e.partial(Atom::jet(f, j));
        t = total_derivative_multi(t, j);
        if (j.order() % 2 != 0) t = -t;
        r += t;
    }
    return r;
}

Characteristics characteristic(const Generator& g) {
    const SpacePtr& sp = g.space;
    std::size_t p = sp->num_independent(), q = sp->num_fields();
    Characteristics ch;
    for (std::size_t a = 0; a < q; ++a) {
        Expression qa = g.phi[a];
        for (std::size_t i = 0; i < p; ++i)
            qa -= g.xi[i] * Expression::from_atom(sp, Atom::jet((int)a, false,
                                                                MultiIndex::unit(p, i)));
        ch.original.push_back(qa);
    }
    if (g.phi_star) {
        ch.dummy.emplace();
        for (std::size_t a = 0; a < q; ++a) {
            Expression qa = (*g.phi_star)[a];
            for (std::size_t i = 0; i < p; ++i)
                qa -= g.xi[i] * Expression::from_atom(sp, Atom::jet((int)a, true,
                                                                    MultiIndex::unit(p, i)));
            ch.dummy->push_back(qa);
        }
    }
    return ch;
}

Expression prolong_apply(const Generator& g, const Expression& e) {
    const SpacePtr& sp = g.space;
    std::size_t p = sp->num_independent();
    Characteristics ch = characteristic(g);
    Expression r = Expression::from_terms(sp, {});
    for (std::size_t i = 0; i < p; ++i)
        if (!g.xi[i].is_zero()) r += g.xi[i] * total_derivative(e, i);
    for (std::size_t a = 0; a < sp->num_fields(); ++a) {
        for (const auto& j : e.jet_orders_of(FieldRef{(int)a, false}))
            r += total_derivative_multi(ch.original[a], j) *
                 e.partial(Atom::jet((int)a, false, j));
        if (ch.dummy)
            for (const auto& j : e.jet_orders_of(FieldRef{(int)a, true}))
                r += total_derivative_multi((*ch.dummy)[a], j) *
                     e.partial(Atom::jet((int)a, true, j));
    }
    return r;
}

Expression xi_divergence(const Generator& g) {
    Expression r;
    for (std::size_t i = 0; i < g.space->num_independent(); ++i)
        r += total_derivative(g.xi[i], i);
    return r;
}

Generator commutator(const Generator& g, const Generator& h) {
    Generator r;
    r.space = g.space;
    for (std::size_t i = 0; i < g.xi.size(); ++i)
        r.xi.push_back(prolong_apply(g, h.xi[i]) - prolong_apply(h, g.xi[i]));
    for (std::size_t a = 0; a < g.phi.size(); ++a)
        r.phi.push_back(prolong_apply(g, h.phi[a]) - prolong_apply(h, g.phi[a]));
    if (g.phi_star && h.phi_star) {
        r.phi_star.emplace();
        for (std::size_t a = 0; a < g.phi.size(); ++a)
            r.phi_star->push_back(prolong_apply(g, (*h.phi_star)[a]) -
                                  prolong_apply(h, (*g.phi_star)[a]));
    }
    return r;
}

FluxTuple FluxTuple::zero(SpacePtr sp) {
    FluxTuple p;
    p.components.assign(sp->num_independent(), Expression());
    p.space = std::move(sp);
    return p;
}

Expression divergence(const FluxTuple& p) {
    Expression r = Expression::from_terms(p.space, {});
    for (std::size_t i = 0; i < p.components.size(); ++i)
        r += total_derivative(p.components[i], i);
    return r;
}

bool is_total_divergence(const Expression& e) {
    std::set<std::pair<int, bool>> fields;
    e.for_each_atom([&](const Atom& a) {
        if (a.is_jet()) fields.insert({a.index, a.dummy});
    });
    for (const auto& [idx, dummy] : fields)
        if (!euler_operator(e, FieldRef{idx, dummy}).is_zero()) return false;
    return true;
}

namespace {

/// Accumulates the flux tuple of  u_J V - u (-D)_J V  by repeated integration
/// by parts, peeling one derivative per step:
///   u_{K+1_i} V = D_i(u_K V) - u_K D_i V.
void ibp_flux(const SpacePtr& sp, FieldRef f, const MultiIndex& j, const Expression& v,
              const Rational& scale, FluxTuple& out) {
    if (j.is_zero()) return;
    std::size_t i = 0;
    while (j[i] == 0) ++i;
    MultiIndex k = j.minus(MultiIndex::unit(j.size(), i));
    out.components[i] += Expression::from_atom(sp, Atom::jet(f, k)) * v * scale;
    ibp_flux(sp, f, k, total_derivative(v, i), -scale, out);
}

/// Same peeling restricted to one direction, producing a scalar potential.
void ibp_sigma(const SpacePtr& sp, FieldRef f, const MultiIndex& j, const Expression& v,
               const Rational& scale, std::size_t dir, Expression& out) {
    if (j[dir] == 0) return;
    MultiIndex k = j.minus(MultiIndex::unit(j.size(), dir));
    out += Expression::from_atom(sp, Atom::jet(f, k)) * v * scale;
    ibp_sigma(sp, f, k, total_derivative(v, dir), -scale, dir, out);
}

/// Splits off the part free of jet atoms (same denominator on both halves).
std::pair<Expression, Expression> split_base_part(const Expression& e) {
    std::map<Monomial, Rational> base, vert;
    for (const auto& [m, c] : e.terms())
        (m.has_jet() ? vert : base).emplace(m, c);
    return {Expression::from_terms(e.space(), std::move(base), e.denominator()),
            Expression::from_terms(e.space(), std::move(vert), e.denominator())};
}

/// Homogeneous components by total degree in jet atoms (degree >= 1 here).
std::map<int, Expression> jet_degree_parts(const Expression& e) {
    std::map<int, std::map<Monomial, Rational>> parts;
    for (const auto& [m, c] : e.terms()) parts[m.degree_in_jets()].emplace(m, c);
    std::map<int, Expression> r;
    for (auto& [d, terms] : parts)
        r.emplace(d, Expression::from_terms(e.space(), std::move(terms), e.denominator()));
    return r;
}

/// Integrates a jet-free monomial in direction i (power rule in x^i).
Expression integrate_base_monomial(const SpacePtr& sp, const Monomial& m, const Rational& c,
                                   const Monomial& den, std::size_t i) {
    Atom xi = Atom::independent((int)i);
    int k = m.exponent_of(xi);
    return Expression::from_terms(sp, {{m * Monomial::atom(xi), c / Rational(k + 1)}}, den);
}

} // namespace

FluxTuple reconstruct_fluxes(const Expression& e) {
    if (!is_total_divergence(e)) throw NotADivergence("expression is not a total divergence");
    const SpacePtr& sp = e.space();
    if (!sp) throw Error("cannot reconstruct fluxes for an expression without a space");
    FluxTuple out = FluxTuple::zero(sp);
    auto [base, vertical] = split_base_part(e);

    for (const auto& [d, part] : jet_degree_parts(vertical))
        for (const Atom& a : part.jet_atoms())
            ibp_flux(sp, a.field(), a.deriv, part.partial(a), Rational(1, d), out);

    std::size_t p = sp->num_independent();
    for (const auto& [m, c] : base.terms()) {
        bool done = false;
        for (std::size_t ii = p; ii-- > 0 && !done;) {
            if (m.function_depends_on(*sp, ii)) continue;
            out.components[ii] += integrate_base_monomial(sp, m, c, base.denominator(), ii);
            done = true;
        }
        if (!done)
            throw HomotopyDegenerate("jet-free part has no closed-form antiderivative");
    }

    if (!(divergence(out) - e).is_zero())
        throw Error("internal: flux reconstruction failed verification");
    return out;
}

Expression substitute(const Expression& e, const SubstitutionRules& rules) {
    for (const auto& [key, value] : rules) {
        if (key.is_parameter()) continue;
        if (key.is_jet() && key.deriv.is_zero()) continue;
        throw NonBaseSubstitution(
            "substitution keys must be base dependent variables or parameters");
    }
    // prolong base rules to every derivative atom that actually occurs
    std::map<Atom, Expression> repl;
    for (const auto& [p, d] : e.denominator().factors())
        if (rules.count(p)) repl.emplace(p, rules.at(p));
    e.for_each_atom([&](const Atom& a) {
        if (repl.count(a)) return;
        if (a.is_parameter()) {
            auto it = rules.find(a);
            if (it != rules.end()) repl.emplace(a, it->second);
            return;
        }
        if (!a.is_jet()) return;
        auto it = rules.find(Atom::jet(a.field(), MultiIndex(a.deriv.size())));
        if (it == rules.end()) return;
        repl.emplace(a, total_derivative_multi(it->second, a.deriv));
    });
    return e.replace_atoms(repl);
}

std::optional<Expression> reconstruct_flux_1d(const Expression& e, std::size_t dir) {
    const SpacePtr& sp = e.space();
    if (e.is_zero()) return Expression();
    Expression sigma;
    auto [base, vertical] = split_base_part(e);

    for (const auto& [d, part] : jet_degree_parts(vertical))
        for (const Atom& a : part.jet_atoms())
            if (a.deriv[dir] > 0)
                ibp_sigma(sp, a.field(), a.deriv, part.partial(a), Rational(1, d), dir, sigma);

    for (const auto& [m, c] : base.terms()) {
        if (m.function_depends_on(*sp, dir)) return std::nullopt;
        sigma += integrate_base_monomial(sp, m, c, base.denominator(), dir);
    }

    if (!(total_derivative(sigma, dir) - e).is_zero()) return std::nullopt;
    return sigma;
}

} // namespace jetnoether
