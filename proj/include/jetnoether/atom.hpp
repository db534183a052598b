#pragma once

#include <cstdint>

#include "jetnoether/multi_index.hpp"

namespace jetnoether {

enum class AtomKind : std::uint8_t { Independent, Jet, Parameter, ParamFunction };

/// A dependent field, either an original u^a or its paired dummy v^a.
struct FieldRef {
    int index = 0;
    bool dummy = false;

    bool operator==(const FieldRef& o) const { return index == o.index && dummy == o.dummy; }
    bool operator!=(const FieldRef& o) const { return !(*this == o); }
};

/// One coordinate of the jet space: an independent variable x^i, a jet
/// variable u^a_J (or dummy v^a_J), a named parameter, or a derivative of a
/// parameter-function f^(k).  Names are resolved through the Space.
struct Atom {
    AtomKind kind = AtomKind::Independent;
    int index = 0;      // variable / field / parameter / function index
    bool dummy = false; // Jet only
    MultiIndex deriv;   // Jet: length p; ParamFunction: length = #declared args

    static Atom independent(int i) { return Atom{AtomKind::Independent, i, false, {}}; }
    static Atom jet(int field, bool dummy, MultiIndex j) {
        return Atom{AtomKind::Jet, field, dummy, std::move(j)};
    }
    static Atom jet(FieldRef f, MultiIndex j) { return jet(f.index, f.dummy, std::move(j)); }
    static Atom parameter(int k) { return Atom{AtomKind::Parameter, k, false, {}}; }
    static Atom param_function(int k, MultiIndex d) {
        return Atom{AtomKind::ParamFunction, k, false, std::move(d)};
    }

    bool is_jet() const { return kind == AtomKind::Jet; }
    bool is_parameter() const { return kind == AtomKind::Parameter; }
    FieldRef field() const { return FieldRef{index, dummy}; }

    bool operator==(const Atom& o) const {
        return kind == o.kind && index == o.index && dummy == o.dummy && deriv == o.deriv;
    }
    bool operator!=(const Atom& o) const { return !(*this == o); }
};

/// Total atom order: independent variables, then jet variables by
/// (field, graded-lex multi-index) with originals before dummies, then
/// parameters, then parameter-functions by (function, derivative order).
inline int atom_cmp(const Atom& a, const Atom& b) {
    auto rank = [](const Atom& x) { return static_cast<int>(x.kind); };
    if (rank(a) != rank(b)) return rank(a) < rank(b) ? -1 : 1;
    switch (a.kind) {
    case AtomKind::Independent:
    case AtomKind::Parameter:
        if (a.index != b.index) return a.index < b.index ? -1 : 1;
        return 0;
    case AtomKind::Jet:
        if (a.dummy != b.dummy) return a.dummy ? 1 : -1;
        if (a.index != b.index) return a.index < b.index ? -1 : 1;
        return MultiIndex::graded_lex_cmp(a.deriv, b.deriv);
    case AtomKind::ParamFunction:
        if (a.index != b.index) return a.index < b.index ? -1 : 1;
        return MultiIndex::graded_lex_cmp(a.deriv, b.deriv);
    }
    return 0;
}

inline bool operator<(const Atom& a, const Atom& b) { return atom_cmp(a, b) < 0; }

} // namespace jetnoether
