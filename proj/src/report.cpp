#include "jetnoether/report.hpp"

#include <sstream>

#include "jetnoether/errors.hpp"
#include "jetnoether/render.hpp"

namespace jetnoether {

namespace {

using nlohmann::json;

const char* class_name(AdjointClass c) {
    switch (c) {
    case AdjointClass::MinusOriginal: return "minus-original";
    case AdjointClass::ConstantMultiple: return "constant-multiple";
    case AdjointClass::ZeroOnSolutions: return "zero-on-solutions";
    case AdjointClass::Fail: return "fail";
    }
    return "?";
}

std::vector<const GeneratorDecl*> select_generators(const ProblemFile& pf,
                                                    const CommandOptions& opts) {
    std::vector<const GeneratorDecl*> out;
    if (opts.generators.empty()) {
        for (const auto& g : pf.generators) out.push_back(&g);
    } else {
        for (const auto& name : opts.generators) {
            const GeneratorDecl* g = pf.find_generator(name);
            if (!g) throw Error("unknown generator '" + name + "'");
            out.push_back(g);
        }
    }
    if (out.empty()) throw Error("no generators selected");
    return out;
}

json law_to_json(const ConservationLaw& law, const Space& sp, bool with_dummy) {
    json jq = json::object();
    for (std::size_t a = 0; a < law.q.original.size(); ++a)
        jq[sp.field_name(a)] = render(law.q.original[a], sp);
    if (with_dummy && law.q.dummy)
        for (std::size_t a = 0; a < law.q.dummy->size(); ++a)
            jq[sp.dummy_name(a)] = render((*law.q.dummy)[a], sp);
    json jp = json::object();
    for (std::size_t i = 0; i < law.p.components.size(); ++i)
        jp[sp.independent_name(i)] = render(law.p.components[i], sp);
    return json{{"characteristics", jq},
                {"fluxes", jp},
                {"residual", law.residual.is_zero() ? "zero" : render(law.residual, sp)},
                {"triviality", to_string(law.triviality)},
                {"provenance", law.provenance}};
}

void print_law(std::ostream& os, const ConservationLaw& law, const Space& sp) {
    os << "  characteristics:\n";
    for (std::size_t a = 0; a < law.q.original.size(); ++a)
        os << "    Q[" << sp.field_name(a) << "] = " << render(law.q.original[a], sp) << "\n";
    if (law.q.dummy)
        for (std::size_t a = 0; a < law.q.dummy->size(); ++a)
            os << "    Q[" << sp.dummy_name(a) << "] = " << render((*law.q.dummy)[a], sp)
               << "\n";
    os << "  fluxes (unique up to divergence-free tuples):\n";
    for (std::size_t i = 0; i < law.p.components.size(); ++i)
        os << "    P[" << sp.independent_name(i) << "] = " << render(law.p.components[i], sp)
           << "\n";
    os << "  residual: " << (law.residual.is_zero() ? "zero" : render(law.residual, sp)) << "\n";
    os << "  triviality: " << to_string(law.triviality) << "\n";
}

/// Re-verifies Div P - sum Q.F = 0 for a law stated against the original
/// system; reports never echo a stored status without recomputing it.
bool reverify_residual(const ConservationLaw& law, const DiffSystem& sys) {
    Expression r = divergence(law.p);
    for (std::size_t a = 0; a < sys.size(); ++a)
        r -= law.q.original[a] * sys.equation(a);
    return r.is_zero();
}

} // namespace

CommandResult run_adjoint(const ProblemFile& pf, const CommandOptions& opts) {
    if (pf.balance_mode == BalanceMode::Variational && !opts.balance_override)
        throw Error("'adjoint' applies to formal or modified Lagrangians, not to a "
                    "variational problem");
    ModifiedLagrangian ml = pf.make_lagrangian(opts.balance_override);
    SelfAdjointnessReport rep = check_self_adjointness(ml);
    const Space& sp = *pf.space;

    bool ok = rep.verdict(opts.strict_selfadjoint);
    CommandResult res;
    res.exit_code = ok ? 0 : 1;

    std::ostringstream os;
    json eqs = json::array();
    os << "modified adjoint system:\n";
    for (std::size_t a = 0; a < rep.adjoint.size(); ++a) {
        os << "  " << pf.equation_names[a] << "*: " << render(rep.adjoint[a], sp) << " = 0\n";
        os << "    after substitution: " << render(rep.substituted[a], sp) << "  ["
           << class_name(rep.classes[a]) << "]\n";
        eqs.push_back({{"name", pf.equation_names[a]},
                       {"adjoint", render(rep.adjoint[a], sp)},
                       {"substituted", render(rep.substituted[a], sp)},
                       {"class", class_name(rep.classes[a])}});
    }
    os << "verdict: " << (ok ? "self-adjoint" : "not self-adjoint")
       << (opts.strict_selfadjoint ? " (strict: r = -F)" : " (lenient)") << "\n";
    res.text = os.str();
    res.json = {{"command", "adjoint"},
                {"strict", opts.strict_selfadjoint},
                {"equations", eqs},
                {"verdict", ok ? "self-adjoint" : "not-self-adjoint"},
                {"status", "ok"}};
    return res;
}

CommandResult run_check_sym(const ProblemFile& pf, const CommandOptions& opts) {
    CommandResult res;
    std::ostringstream os;
    json gens = json::array();
    bool all = true;
    for (const GeneratorDecl* g : select_generators(pf, opts)) {
        Generator base = g->gen;
        base.phi_star.reset(); // the condition concerns the (x,u) part
        bool sym = check_linearized_symmetry(base, pf.system());
        all = all && sym;
        os << g->name << ": " << (sym ? "symmetry" : "not a symmetry") << "\n";
        gens.push_back({{"name", g->name}, {"symmetry", sym}});
    }
    res.exit_code = all ? 0 : 1;
    res.text = os.str();
    res.json = {{"command", "check-sym"}, {"generators", gens}, {"status", "ok"}};
    return res;
}

namespace {

struct PipelineItem {
    std::string name;
    Generator extended;
    std::string provenance;
    ModifiedLagrangian ml;
};

/// Resolves the generator into a variational symmetry of the Lagrangian the
/// requested mode selects: raw generators are taken as-is, others go through
/// the generic (thm A) or balanced (thm B) extension.
PipelineItem extend_one(const ProblemFile& pf, const GeneratorDecl& g,
                        const CommandOptions& opts) {
    if (pf.balance_mode == BalanceMode::Variational && !opts.balance_override) {
        if (g.gen.phi_star) throw Error("variational problems take generators without phistar");
        return {g.name, g.gen, "variational", pf.make_lagrangian()};
    }
    if (g.gen.phi_star)
        return {g.name, g.gen, "raw", pf.make_lagrangian(opts.balance_override)};
    if (opts.mode == "generic") {
        ModifiedLagrangian ml = pf.make_lagrangian(BalanceMode::Generic);
        if (!check_linearized_symmetry(g.gen, pf.system()))
            throw NotASymmetry("generator '" + g.name +
                               "' fails the linearized symmetry condition");
        return {g.name, extend_generic(g.gen, pf.system(), opts.k_options),
                "generic-extension", std::move(ml)};
    }
    if (opts.mode != "balanced") throw Error("unknown mode '" + opts.mode + "'");
    ModifiedLagrangian ml = pf.make_lagrangian(opts.balance_override);
    if (!check_linearized_symmetry(g.gen, pf.system()))
        throw NotASymmetry("generator '" + g.name +
                           "' fails the linearized symmetry condition");
    return {g.name, extend_balanced(g.gen, ml, opts.k_options), "balanced-extension",
            std::move(ml)};
}

} // namespace

CommandResult run_extend(const ProblemFile& pf, const CommandOptions& opts) {
    CommandResult res;
    std::ostringstream os;
    json gens = json::array();
    const Space& sp = *pf.space;
    for (const GeneratorDecl* g : select_generators(pf, opts)) {
        try {
            PipelineItem item = extend_one(pf, *g, opts);
            os << g->name << " extends to a variational symmetry (" << item.provenance
               << "):\n";
            json stars = json::array();
            for (std::size_t a = 0; a < sp.num_fields(); ++a) {
                const Expression& ps =
                    item.extended.phi_star ? (*item.extended.phi_star)[a] : Expression();
                os << "  phistar[" << sp.dummy_name(a) << "] = " << render(ps, sp) << "\n";
                stars.push_back(render(ps, sp));
            }
            gens.push_back({{"name", g->name},
                            {"provenance", item.provenance},
                            {"phistar", stars},
                            {"verified", true}});
        } catch (const BalanceNotInvariant& ex) {
            os << g->name << ": not extendable: " << ex.what() << "\n";
            gens.push_back({{"name", g->name}, {"error", ex.what()}});
            res.exit_code = 1;
        } catch (const NotASymmetry& ex) {
            os << g->name << ": not extendable: " << ex.what() << "\n";
            gens.push_back({{"name", g->name}, {"error", ex.what()}});
            res.exit_code = 1;
        }
    }
    res.text = os.str();
    res.json = {{"command", "extend"},
                {"mode", opts.mode},
                {"generators", gens},
                {"status", res.exit_code == 0 ? "ok" : "failed"}};
    return res;
}

CommandResult run_conserve(const ProblemFile& pf, const CommandOptions& opts) {
    CommandResult res;
    std::ostringstream os;
    json laws = json::array();
    const Space& sp = *pf.space;
    bool all_zero = true;
    for (const GeneratorDecl* g : select_generators(pf, opts)) {
        try {
            PipelineItem item = extend_one(pf, *g, opts);
            ConservationLaw law = noether_law(item.extended, item.ml);
            law.provenance = item.provenance;
            bool substituted = false;
            if (!item.ml.is_variational_problem()) {
                law = normalize_law_content(substitute_dummy(law, item.ml));
                law.provenance = item.provenance + "+substitution";
                substituted = true;
            } else {
                // state the law against the declared system: fold the constant
                // relating E_u(L) to F into the characteristic
                for (std::size_t a = 0; a < pf.system().size(); ++a) {
                    Expression el =
                        euler_operator(item.ml.lagrangian(), FieldRef{(int)a, false});
                    auto ratio =
                        Expression::parameter_monomial_ratio(el, pf.system().equation(a));
                    if (ratio) law.q.original[a] = law.q.original[a] * *ratio;
                }
                law.triviality =
                    classify_triviality(law.q.original, law.p, pf.system());
            }
            bool verified = reverify_residual(law, pf.system());
            all_zero = all_zero && verified;
            os << "law from " << g->name << " (" << law.provenance << "):\n";
            print_law(os, law, sp);
            json jl = law_to_json(law, sp, !substituted);
            jl["generator"] = g->name;
            jl["residual"] = verified ? "zero" : "nonzero";
            laws.push_back(std::move(jl));
        } catch (const BalanceNotInvariant& ex) {
            os << g->name << ": no law: " << ex.what() << "\n";
            laws.push_back({{"generator", g->name}, {"error", ex.what()}});
            res.exit_code = 1;
        } catch (const NotASymmetry& ex) {
            os << g->name << ": no law: " << ex.what() << "\n";
            laws.push_back({{"generator", g->name}, {"error", ex.what()}});
            res.exit_code = 1;
        }
    }
    if (!all_zero) res.exit_code = 1;
    res.text = os.str();
    res.json = {{"command", "conserve"},
                {"mode", opts.mode},
                {"laws", laws},
                {"status", res.exit_code == 0 ? "ok" : "failed"}};
    return res;
}

CommandResult run_verify(const ProblemFile& pf, const CommandOptions& opts) {
    CommandResult res;
    std::ostringstream os;
    json out = json::array();
    const Space& sp = *pf.space;
    std::vector<const LawDecl*> selected;
    if (opts.laws.empty()) {
        for (const auto& l : pf.laws) selected.push_back(&l);
    } else {
        for (const auto& name : opts.laws) {
            const LawDecl* found = nullptr;
            for (const auto& l : pf.laws)
                if (l.name == name) found = &l;
            if (!found) throw Error("unknown law '" + name + "'");
            selected.push_back(found);
        }
    }
    if (selected.empty()) throw Error("no laws to verify");
    for (const LawDecl* l : selected) {
        ConservationLaw law;
        law.q.original = l->q;
        law.p.space = pf.space;
        law.p.components = l->p;
        bool ok = reverify_residual(law, pf.system());
        Triviality tag = ok ? classify_triviality(l->q, law.p, pf.system())
                            : Triviality::Nontrivial;
        if (!ok) res.exit_code = 1;
        os << l->name << ": " << (ok ? "valid (Div P = Q.F identically)" : "INVALID")
           << (ok ? ", " + to_string(tag) : "") << "\n";
        out.push_back({{"name", l->name},
                       {"residual", ok ? "zero" : "nonzero"},
                       {"triviality", ok ? to_string(tag) : "n/a"}});
    }
    res.text = os.str();
    res.json = {{"command", "verify"},
                {"laws", out},
                {"status", res.exit_code == 0 ? "ok" : "failed"}};
    return res;
}

CommandResult run_divtest(const ProblemFile& pf, const CommandOptions& opts) {
    CommandResult res;
    std::ostringstream os;
    Expression e = parse_expression(pf.space, opts.expression);
    const Space& sp = *pf.space;
    bool divergent = is_total_divergence(e);
    json j = {{"command", "divtest"},
              {"expression", render(e, sp)},
              {"is_divergence", divergent}};
    if (divergent) {
        FluxTuple p = reconstruct_fluxes(e);
        os << "total divergence: yes\nfluxes (unique up to divergence-free tuples):\n";
        json jp = json::object();
        for (std::size_t i = 0; i < p.components.size(); ++i) {
            os << "  P[" << sp.independent_name(i) << "] = " << render(p.components[i], sp)
               << "\n";
            jp[sp.independent_name(i)] = render(p.components[i], sp);
        }
        j["fluxes"] = jp;
    } else {
        os << "total divergence: no\n";
        res.exit_code = 1;
    }
    res.text = os.str();
    j["status"] = res.exit_code == 0 ? "ok" : "failed";
    res.json = j;
    return res;
}

CommandResult run_command(const std::string& command, const ProblemFile& pf,
                          const CommandOptions& opts) {
    try {
        if (command == "adjoint") return run_adjoint(pf, opts);
        if (command == "check-sym") return run_check_sym(pf, opts);
        if (command == "extend") return run_extend(pf, opts);
        if (command == "conserve") return run_conserve(pf, opts);
        if (command == "verify") return run_verify(pf, opts);
        if (command == "divtest") return run_divtest(pf, opts);
        throw Error("unknown command '" + command + "'");
    } catch (const Error& ex) {
        CommandResult res;
        res.exit_code = 2;
        res.text = std::string("error: ") + ex.what() + "\n";
        res.json = {{"command", command}, {"status", "error"}, {"error", ex.what()}};
        return res;
    }
}

} // namespace jetnoether
