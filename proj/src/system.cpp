#include "jetnoether/system.hpp"

#include <algorithm>

#include "jetnoether/errors.hpp"
#include "jetnoether/linalg.hpp"

namespace jetnoether {

DiffSystem::DiffSystem(SpacePtr space, std::vector<Expression> equations,
                       std::vector<std::optional<SolvedForm>> solved, int reduce_depth)
    : space_(std::move(space)), equations_(std::move(equations)), solved_(std::move(solved)),
      reduce_depth_(reduce_depth) {
    if (solved_.empty()) solved_.resize(equations_.size());
    validate();
}

void DiffSystem::validate() const {
    if (equations_.size() != space_->num_fields())
        throw Error("system must have one equation per dependent field");
    if (solved_.size() != equations_.size())
        throw Error("solved forms must align with equations");
    for (std::size_t a = 0; a < equations_.size(); ++a) {
        if (equations_[a].is_zero()) throw Error("equation is identically zero");
        if (equations_[a].has_dummy()) throw Error("equation mentions a dummy field");
        if (!solved_[a]) continue;
        const SolvedForm& sf = *solved_[a];
        if (!sf.lead.is_jet() || sf.lead.dummy)
            throw Error("leading atom must be a jet of an original field");
        Expression diff = Expression::from_atom(space_, sf.lead) - sf.rhs;
        auto ratio = Expression::parameter_monomial_ratio(diff, equations_[a]);
        if (!ratio)
            throw Error("solved form does not match equation " + std::to_string(a));
        ratio->for_each_atom([&](const Atom& at) {
            if (at.is_parameter() && !space_->parameter_nonzero(at.index))
                throw Error("solved form divides by parameter '" +
                            space_->parameter_name(at.index) + "' not flagged nonzero");
        });
        for (const auto& [p, d] : ratio->denominator().factors())
            if (!space_->parameter_nonzero(p.index))
                throw Error("solved form divides by parameter '" +
                            space_->parameter_name(p.index) + "' not flagged nonzero");
    }
    for (std::size_t a = 0; a < solved_.size(); ++a)
        for (std::size_t b = 0; b < solved_.size(); ++b) {
            if (a == b || !solved_[a] || !solved_[b]) continue;
            const Atom& la = solved_[a]->lead;
            const Atom& lb = solved_[b]->lead;
            if (la.field() == lb.field() && la.deriv.contains(lb.deriv))
                throw Error("leading atom of equation " + std::to_string(a) +
                            " is a derivative of the lead of equation " + std::to_string(b));
        }
}

bool DiffSystem::has_solved_form() const {
    return std::any_of(solved_.begin(), solved_.end(), [](const auto& s) { return bool(s); });
}

Atom DiffSystem::pick_lead(const Expression& equation) {
    std::optional<Atom> best;
    for (const Atom& a : equation.jet_atoms()) {
        if (a.dummy) continue;
        if (!best) {
            best = a;
            continue;
        }
        const Atom& b = *best;
        int oa = a.deriv.order(), ob = b.deriv.order();
        bool better;
        if (oa != ob)
            better = oa > ob;
        else if (a.deriv[0] != b.deriv[0])
            better = a.deriv[0] > b.deriv[0];
        else if (a.index != b.index)
            better = a.index < b.index;
        else
            better = MultiIndex::graded_lex_cmp(a.deriv, b.deriv) > 0;
        if (better) best = a;
    }
    if (!best) throw Error("equation has no jet atoms to solve for");
    return *best;
}

DiffSystem DiffSystem::with_leads(SpacePtr space, std::vector<Expression> equations,
                                  std::vector<Atom> leads) {
    std::vector<std::optional<SolvedForm>> solved;
    for (std::size_t a = 0; a < equations.size(); ++a) {
        const Atom& lead = leads[a];
        Expression coeff = equations[a].partial(lead);
        if (coeff.is_zero() || !coeff.is_parameter_monomial() || coeff.has_jets())
            throw Error("cannot solve equation " + std::to_string(a) +
                        ": not linear in the leading atom with constant coefficient");
        coeff.for_each_atom([&](const Atom& at) {
            if (at.is_parameter() && !space->parameter_nonzero(at.index))
                throw Error("solving divides by parameter '" + space->parameter_name(at.index) +
                            "' not flagged nonzero");
        });
        Expression rest = equations[a] - coeff * Expression::from_atom(space, lead);
        if (!rest.partial(lead).is_zero())
            throw Error("cannot solve equation " + std::to_string(a) +
                        ": nonlinear in the leading atom");
        solved.push_back(SolvedForm{lead, -rest / coeff});
    }
    return DiffSystem(std::move(space), std::move(equations), std::move(solved));
}

Expression reduce_on_solutions(const Expression& e, const DiffSystem& sys) {
    if (!sys.has_solved_form()) throw Error("system carries no solved form");
    Expression cur = e;
    for (int pass = 0; pass < sys.reduce_depth(); ++pass) {
        std::map<Atom, Expression> repl;
        cur.for_each_atom([&](const Atom& a) {
            if (!a.is_jet() || a.dummy || repl.count(a)) return;
            for (std::size_t k = 0; k < sys.size(); ++k) {
                const auto& sf = sys.solved(k);
                if (!sf || sf->lead.index != a.index) continue;
                if (!a.deriv.contains(sf->lead.deriv)) continue;
                repl.emplace(a, total_derivative_multi(sf->rhs, a.deriv.minus(sf->lead.deriv)));
                return;
            }
        });
        if (repl.empty()) return cur;
        cur = cur.replace_atoms(repl);
    }
    throw NonTerminating("reduction modulo the system did not terminate");
}

bool check_linearized_symmetry(const Generator& g, const DiffSystem& sys) {
    if (g.has_dummy_part())
        throw Error("linearized symmetry condition applies to generators without dummy part");
    for (std::size_t a = 0; a < sys.size(); ++a)
        if (!reduce_on_solutions(prolong_apply(g, sys.equation(a)), sys).is_zero()) return false;
    return true;
}

namespace {

/// All multi-indices of length p with |J| <= max_order, in graded-lex order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t p, int max_order) {
    std::vector<MultiIndex> all{MultiIndex(p)};
    std::size_t lo = 0;
    for (int o = 1; o <= max_order; ++o) {
        std::size_t hi = all.size();
        std::vector<MultiIndex> next;
        for (std::size_t k = lo; k < hi; ++k)
            for (std::size_t i = 0; i < p; ++i) next.push_back(all[k].plus_unit(i));
        std::sort(next.begin(), next.end(), [](const MultiIndex& a, const MultiIndex& b) {
            return MultiIndex::graded_lex_cmp(a, b) < 0;
        });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        lo = all.size();
        all.insert(all.end(), next.begin(), next.end());
    }
    return all;
}

void enumerate_monomials(const std::vector<Atom>& pool, std::size_t from, int degree_left,
                         const Monomial& acc, std::vector<Monomial>& out) {
    out.push_back(acc);
    for (std::size_t i = from; i < pool.size(); ++i)
        if (degree_left > 0)
            enumerate_monomials(pool, i, degree_left - 1, acc * Monomial::atom(pool[i], 1), out);
}

} // namespace

std::optional<std::vector<Rational>> linear_match(const Expression& target,
                                                  const std::vector<Expression>& basis) {
    // clear parameter denominators with a common monomial multiplier
    std::map<Atom, int> lcm;
    auto account = [&](const Monomial& den) {
        for (const auto& [a, e] : den.factors()) lcm[a] = std::max(lcm[a], e);
    };
    account(target.denominator());
    for (const auto& b : basis) account(b.denominator());
    std::vector<std::pair<Atom, int>> lf(lcm.begin(), lcm.end());
    Expression mult = Expression::from_terms(
        target.space(), {{Monomial(std::move(lf)), Rational(1)}});

    Expression t = target * mult;
    std::vector<Expression> bs;
    for (const auto& b : basis) bs.push_back(b * mult);

    std::map<Monomial, std::size_t> row_of;
    auto rows_from = [&](const Expression& e) {
        for (const auto& [m, c] : e.terms())
            row_of.emplace(m, row_of.size());
    };
    rows_from(t);
    for (const auto& b : bs) rows_from(b);

    std::vector<std::vector<Rational>> a(row_of.size(), std::vector<Rational>(bs.size()));
    std::vector<Rational> rhs(row_of.size());
    for (const auto& [m, c] : t.terms()) rhs[row_of[m]] = c;
    for (std::size_t k = 0; k < bs.size(); ++k)
        for (const auto& [m, c] : bs[k].terms()) a[row_of[m]][k] = c;
    return solve_linear(std::move(a), std::move(rhs));
}

KMatrixSet extract_K(const Generator& g, const DiffSystem& sys, const KOptions& opts) {
    const SpacePtr& sp = sys.space();
    std::size_t q = sys.size();

    std::vector<Expression> targets;
    bool all_zero = true;
    for (std::size_t a = 0; a < q; ++a) {
        targets.push_back(prolong_apply(g, sys.equation(a)));
        all_zero = all_zero && targets.back().is_zero();
    }
    if (all_zero) return KMatrixSet{};

    auto indices = multi_indices_up_to(sp->num_independent(), opts.max_order);
    std::vector<std::vector<Expression>> derived(indices.size()); // [j][beta] = D_J F_beta
    for (std::size_t ji = 0; ji < indices.size(); ++ji)
        for (std::size_t b = 0; b < q; ++b)
            derived[ji].push_back(total_derivative_multi(sys.equation(b), indices[ji]));

    // ansatz atoms: everything occurring in the targets and derived equations,
    // plus all independent variables and parameters
    std::set<Atom> pool_set;
    for (std::size_t i = 0; i < sp->num_independent(); ++i)
        pool_set.insert(Atom::independent((int)i));
    for (std::size_t k = 0; k < sp->num_parameters(); ++k)
        pool_set.insert(Atom::parameter((int)k));
    for (const auto& t : targets)
        for (const auto& a : t.atoms()) pool_set.insert(a);
    for (const auto& row : derived)
        for (const auto& e : row)
            for (const auto& a : e.atoms()) pool_set.insert(a);
    std::vector<Atom> pool(pool_set.begin(), pool_set.end());

    int max_degree = opts.ansatz_degree;
    if (max_degree < 0) {
        int d = 0;
        for (const auto& t : targets) d = std::max(d, t.max_degree_in_jets());
        max_degree = d + 1;
    }

    for (int degree = 0; degree <= max_degree; ++degree) {
        std::vector<Monomial> monomials;
        enumerate_monomials(pool, 0, degree, Monomial::one(), monomials);
        std::sort(monomials.begin(), monomials.end());
        monomials.erase(std::unique(monomials.begin(), monomials.end()), monomials.end());

        for (int mo = 0; mo <= opts.max_order; ++mo) {
            std::size_t nj = 0;
            while (nj < indices.size() && indices[nj].order() <= mo) ++nj;

            // unknowns per equation a: columns (j, b, m)
            std::vector<Expression> basis;
            std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> layout;
            for (std::size_t ji = 0; ji < nj; ++ji)
                for (std::size_t b = 0; b < q; ++b)
                    for (std::size_t mi = 0; mi < monomials.size(); ++mi) {
                        basis.push_back(Expression::from_terms(sp, {{monomials[mi], Rational(1)}}) *
                                        derived[ji][b]);
                        layout.emplace_back(ji, b, mi);
                    }

            std::vector<std::vector<Rational>> solutions;
            bool ok = true;
            for (std::size_t a = 0; a < q && ok; ++a) {
                auto sol = linear_match(targets[a], basis);
                if (!sol)
                    ok = false;
                else
                    solutions.push_back(std::move(*sol));
            }
            if (!ok) continue;

            KMatrixSet result;
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t col = 0; col < basis.size(); ++col) {
                    if (solutions[a][col].is_zero()) continue;
                    auto [ji, b, mi] = layout[col];
                    auto& mat = result.matrices[indices[ji]];
                    if (mat.empty())
                        mat.assign(q, std::vector<Expression>(q));
                    mat[a][b] += Expression::from_terms(sp, {{monomials[mi], solutions[a][col]}});
                    result.max_order = std::max(result.max_order, indices[ji].order());
                }

            for (std::size_t a = 0; a < q; ++a) {
                Expression check = targets[a];
                for (const auto& [j, mat] : result.matrices)
                    for (std::size_t b = 0; b < q; ++b)
                        check -= mat[a][b] * total_derivative_multi(sys.equation(b), j);
                if (!check.is_zero())
                    throw Error("internal: K extraction failed verification");
            }
            return result;
        }
    }
    throw AnsatzExhausted(
        "no K matrices within order " + std::to_string(opts.max_order) + " and degree " +
        std::to_string(max_degree) +
        "; either the generator is not a symmetry in the strong sense or the bounds are too small");
}

} // namespace jetnoether
