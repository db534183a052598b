#include "jetnoether/render.hpp"

#include "jetnoether/errors.hpp"

namespace jetnoether {

std::string render_atom(const Atom& a, const Space& sp) {
    switch (a.kind) {
    case AtomKind::Independent:
        return sp.independent_name(a.index);
    case AtomKind::Parameter:
        return sp.parameter_name(a.index);
    case AtomKind::Jet: {
        std::string name = a.dummy ? sp.dummy_name(a.index) : sp.field_name(a.index);
        if (a.deriv.is_zero()) return name;
        std::string sub;
        for (std::size_t i = 0; i < a.deriv.size(); ++i)
            for (int k = 0; k < a.deriv[i]; ++k) sub += sp.independent_name(i);
        if (a.deriv.order() == 1) return name + "_" + sub;
        return name + "_{" + sub + "}";
    }
    case AtomKind::ParamFunction: {
        const auto& decl = sp.function_decl(a.index);
        std::string s = decl.name;
        int order = a.deriv.order();
        if (order > 0 && decl.args.size() != 1)
            throw Error("cannot render derivatives of a multi-argument function");
        for (int k = 0; k < order; ++k) s += "'";
        s += "(";
        for (std::size_t i = 0; i < decl.args.size(); ++i) {
            if (i) s += ",";
            s += sp.independent_name(decl.args[i]);
        }
        s += ")";
        return s;
    }
    }
    return "?";
}

namespace {

std::string render_coeff(const Rational& c) {
    std::string s = std::to_string(c.num() < 0 ? -c.num() : c.num());
    if (c.den() != 1) s += "/" + std::to_string(c.den());
    return s;
}

std::string render_numerator(const std::map<Monomial, Rational>& terms, const Space& sp) {
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        bool neg = c.is_negative();
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (const auto& [a, e] : m.factors()) {
            if (!mono.empty()) mono += "*";
            mono += render_atom(a, sp);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        Rational mag = c.abs();
        if (mono.empty())
            out += render_coeff(mag);
        else if (mag.is_one())
            out += mono;
        else
            out += render_coeff(mag) + "*" + mono;
    }
    return out;
}

} // namespace

std::string render(const Expression& e, const Space& sp) {
    if (e.is_zero()) return "0";
    std::string num = render_numerator(e.terms(), sp);
    if (e.denominator().is_one()) return num;
    std::string den;
    for (const auto& [a, k] : e.denominator().factors()) {
        if (!den.empty()) den += "*";
        den += render_atom(a, sp);
        if (k != 1) den += "^" + std::to_string(k);
    }
    return "(" + num + ")/(" + den + ")";
}

} // namespace jetnoether
