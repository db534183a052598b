#include "jetnoether/expr.hpp"

#include <algorithm>

#include "jetnoether/errors.hpp"

namespace jetnoether {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::pair<Atom, int>> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return atom_cmp(a.first, b.first) < 0; });
    for (auto& [a, e] : factors) {
        if (e == 0) continue;
        if (!f_.empty() && f_.back().first == a)
            f_.back().second += e;
        else
            f_.emplace_back(a, e);
    }
    f_.erase(std::remove_if(f_.begin(), f_.end(), [](const auto& p) { return p.second == 0; }),
             f_.end());
}

Monomial Monomial::atom(const Atom& a, int exp) {
    Monomial m;
    if (exp != 0) m.f_.emplace_back(a, exp);
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < f_.size() || j < o.f_.size()) {
        if (j == o.f_.size() || (i < f_.size() && atom_cmp(f_[i].first, o.f_[j].first) < 0)) {
            r.f_.push_back(f_[i++]);
        } else if (i == f_.size() || atom_cmp(o.f_[j].first, f_[i].first) < 0) {
            r.f_.push_back(o.f_[j++]);
        } else {
            int e = f_[i].second + o.f_[j].second;
            if (e != 0) r.f_.emplace_back(f_[i].first, e);
            ++i, ++j;
        }
    }
    return r;
}

int Monomial::exponent_of(const Atom& a) const {
    for (const auto& [b, e] : f_)
        if (b == a) return e;
    return 0;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
    Monomial r;
    std::size_t i = 0;
    for (const auto& [a, e] : o.f_) {
        while (i < f_.size() && atom_cmp(f_[i].first, a) < 0) r.f_.push_back(f_[i++]);
        if (i == f_.size() || !(f_[i].first == a) || f_[i].second < e) return std::nullopt;
        if (f_[i].second > e) r.f_.emplace_back(a, f_[i].second - e);
        ++i;
    }
    while (i < f_.size()) r.f_.push_back(f_[i++]);
    return r;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [a, e] : f_) d += e;
    return d;
}

int Monomial::degree_in_jets() const {
    int d = 0;
    for (const auto& [a, e] : f_)
        if (a.is_jet()) d += e;
    return d;
}

bool Monomial::has_jet() const {
    return std::any_of(f_.begin(), f_.end(), [](const auto& p) { return p.first.is_jet(); });
}

bool Monomial::has_dummy() const {
    return std::any_of(f_.begin(), f_.end(),
                       [](const auto& p) { return p.first.is_jet() && p.first.dummy; });
}

bool Monomial::parameters_only() const {
    return std::all_of(f_.begin(), f_.end(), [](const auto& p) { return p.first.is_parameter(); });
}

bool Monomial::function_depends_on(const Space& sp, std::size_t i) const {
    for (const auto& [a, e] : f_) {
        if (a.kind != AtomKind::ParamFunction) continue;
        const auto& args = sp.function_decl(a.index).args;
        if (std::find(args.begin(), args.end(), i) != args.end()) return true;
    }
    return false;
}

int Monomial::cmp(const Monomial& a, const Monomial& b) {
    std::size_t n = std::min(a.f_.size(), b.f_.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = atom_cmp(a.f_[i].first, b.f_[i].first);
        if (c != 0) return c;
        if (a.f_[i].second != b.f_[i].second) return a.f_[i].second < b.f_[i].second ? -1 : 1;
    }
    if (a.f_.size() != b.f_.size()) return a.f_.size() < b.f_.size() ? -1 : 1;
    return 0;
}

// -------------------------------------------------------------- Expression

Expression Expression::constant(const Rational& c) {
    Expression e;
    if (!c.is_zero()) e.terms_.emplace(Monomial::one(), c);
    return e;
}

Expression Expression::from_atom(SpacePtr sp, const Atom& a) {
    Expression e;
    e.space_ = std::move(sp);
    e.terms_.emplace(Monomial::atom(a), Rational(1));
    return e;
}

Expression Expression::from_terms(SpacePtr sp, std::map<Monomial, Rational> terms, Monomial den) {
    Expression e;
    e.space_ = std::move(sp);
    for (auto& [m, c] : terms)
        if (!c.is_zero()) e.terms_.emplace(m, c);
    e.den_ = std::move(den);
    e.reduce_denominator();
    return e;
}

std::optional<Rational> Expression::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
}

bool Expression::is_parameter_monomial() const {
    return terms_.size() == 1 && terms_.begin()->first.parameters_only();
}

void Expression::merge_space(const SpacePtr& other) {
    if (!space_) space_ = other;
}

void Expression::add_term(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void Expression::reduce_denominator() {
    if (terms_.empty()) {
        den_ = Monomial::one();
        return;
    }
    if (den_.is_one()) return;
    std::vector<std::pair<Atom, int>> keep;
    Monomial shift;
    for (const auto& [p, d] : den_.factors()) {
        int m = d;
        for (const auto& [mono, c] : terms_) m = std::min(m, mono.exponent_of(p));
        if (m > 0) shift = shift * Monomial::atom(p, -m);
        if (d - m > 0) keep.emplace_back(p, d - m);
    }
    if (!shift.is_one()) {
        std::map<Monomial, Rational> nt;
        for (const auto& [mono, c] : terms_) nt.emplace(mono * shift, c);
        terms_ = std::move(nt);
        den_ = Monomial(std::move(keep));
    }
}

Expression Expression::operator-() const {
    Expression r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Expression Expression::operator+(const Expression& o) const {
    Expression r;
    r.space_ = space_ ? space_ : o.space_;
    if (den_ == o.den_) {
        r.den_ = den_;
        r.terms_ = terms_;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    } else {
        // common denominator: lcm of the two parameter monomials
        Monomial g; // gcd
        for (const auto& [p, d] : den_.factors()) {
            int e = std::min(d, o.den_.exponent_of(p));
            if (e > 0) g = g * Monomial::atom(p, e);
        }
        Monomial fa = *o.den_.divided_by(g); // multiply our terms by this
        Monomial fb = *den_.divided_by(g);
        r.den_ = den_ * fa;
        for (const auto& [m, c] : terms_) r.add_term(m * fa, c);
        for (const auto& [m, c] : o.terms_) r.add_term(m * fb, c);
    }
    r.reduce_denominator();
    return r;
}

Expression Expression::operator-(const Expression& o) const { return *this + (-o); }

Expression Expression::operator*(const Expression& o) const {
    Expression r;
    r.space_ = space_ ? space_ : o.space_;
    r.den_ = den_ * o.den_;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    r.reduce_denominator();
    return r;
}

Expression Expression::operator*(const Rational& c) const {
    if (c.is_zero()) return Expression();
    Expression r = *this;
    for (auto& [m, k] : r.terms_) k *= c;
    return r;
}

Expression Expression::operator/(const Rational& c) const {
    if (c.is_zero()) throw Error("division by zero");
    return *this * (Rational(1) / c);
}

Expression Expression::pow(int e) const {
    if (e < 0) throw UnsupportedDenominator("negative exponent");
    Expression r = Expression::constant(Rational(1));
    r.merge_space(space_);
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
}

Expression Expression::operator/(const Expression& o) const {
    if (o.is_zero()) throw Error("division by zero");
    if (auto c = o.as_constant()) return *this / *c;
    if (!o.is_parameter_monomial()) {
        bool has_var = false;
        o.for_each_atom([&](const Atom& a) {
            if (a.kind != AtomKind::Parameter) has_var = true;
        });
        throw UnsupportedDenominator(
            has_var ? "division by an expression containing jet or independent variables"
                    : "division by a non-monomial parameter expression");
    }
    const auto& [mono, coef] = *o.terms_.begin();
    Expression r;
    r.space_ = space_ ? space_ : o.space_;
    r.den_ = den_ * mono;
    for (const auto& [m, c] : terms_) r.add_term(m * o.den_, c / coef);
    r.reduce_denominator();
    return r;
}

Expression Expression::partial(const Atom& a) const {
    Expression num;
    num.space_ = space_;
    num.den_ = den_;
    for (const auto& [m, c] : terms_) {
        int e = m.exponent_of(a);
        if (e == 0) continue;
        num.add_term(*m.divided_by(Monomial::atom(a)), c * Rational(e));
    }
    num.reduce_denominator();
    int d = den_.exponent_of(a);
    if (d == 0) return num;
    // quotient rule for a parameter power in the denominator
    Expression correction = *this * Rational(-d) / Expression::from_atom(space_, a);
    return num + correction;
}

bool Expression::operator==(const Expression& o) const {
    return den_ == o.den_ && terms_ == o.terms_;
}

void Expression::for_each_atom(const std::function<void(const Atom&)>& fn) const {
    for (const auto& [m, c] : terms_)
        for (const auto& [a, e] : m.factors()) fn(a);
}

std::set<Atom> Expression::atoms() const {
    std::set<Atom> s;
    for_each_atom([&](const Atom& a) { s.insert(a); });
    return s;
}

std::set<Atom> Expression::jet_atoms() const {
    std::set<Atom> s;
    for_each_atom([&](const Atom& a) {
        if (a.is_jet()) s.insert(a);
    });
    return s;
}

std::vector<MultiIndex> Expression::jet_orders_of(FieldRef f) const {
    std::set<Atom> s;
    for_each_atom([&](const Atom& a) {
        if (a.is_jet() && a.field() == f) s.insert(a);
    });
    std::vector<MultiIndex> r;
    for (const auto& a : s) r.push_back(a.deriv);
    return r;
}

bool Expression::has_jets() const {
    for (const auto& [m, c] : terms_)
        if (m.has_jet()) return true;
    return false;
}

bool Expression::has_dummy() const {
    for (const auto& [m, c] : terms_)
        if (m.has_dummy()) return true;
    return false;
}

bool Expression::depends_on_independent(std::size_t i) const {
    bool dep = false;
    for_each_atom([&](const Atom& a) {
        if (a.kind == AtomKind::Independent && a.index == (int)i) dep = true;
        if (a.kind == AtomKind::ParamFunction && space_) {
            const auto& args = space_->function_decl(a.index).args;
            if (std::find(args.begin(), args.end(), i) != args.end()) dep = true;
        }
    });
    return dep;
}

int Expression::max_degree_in_jets() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in_jets());
    return d;
}

std::optional<Expression> Expression::parameter_monomial_ratio(const Expression& e1,
                                                               const Expression& e2) {
    if (e1.is_zero() || e2.is_zero()) return std::nullopt;
    // candidate ratio from the leading terms (signed exponents), then verify
    const auto& [m1, c1] = *e1.terms_.rbegin();
    const auto& [m2, c2] = *e2.terms_.rbegin();
    std::map<Atom, int> exps;
    auto account = [&](const Monomial& m, int sign) {
        for (const auto& [a, e] : m.factors()) exps[a] += sign * e;
    };
    account(m1, 1);
    account(e2.den_, 1);
    account(m2, -1);
    account(e1.den_, -1);
    std::vector<std::pair<Atom, int>> num, den;
    for (const auto& [a, e] : exps) {
        if (e == 0) continue;
        if (!a.is_parameter()) return std::nullopt;
        if (e > 0)
            num.emplace_back(a, e);
        else
            den.emplace_back(a, -e);
    }
    Expression c = Expression::from_terms(e1.space_ ? e1.space_ : e2.space_,
                                          {{Monomial(std::move(num)), c1 / c2}},
                                          Monomial(std::move(den)));
    if ((c * e2 - e1).is_zero()) return c;
    return std::nullopt;
}

Expression Expression::replace_atoms(const std::map<Atom, Expression>& repl) const {
    Expression result;
    result.space_ = space_;
    for (const auto& [p, d] : den_.factors())
        if (repl.count(p))
            throw UnsupportedDenominator("substitution for a parameter used in a denominator");
    for (const auto& [m, c] : terms_) {
        Expression term = Expression::constant(c);
        term.merge_space(space_);
        for (const auto& [a, e] : m.factors()) {
            auto it = repl.find(a);
            if (it == repl.end())
                term = term * Expression::from_atom(space_, a).pow(e);
            else
                term = term * it->second.pow(e);
        }
        result += term;
    }
    if (!den_.is_one()) result = result / Expression::from_terms(space_, {{den_, Rational(1)}});
    return result;
}

} // namespace jetnoether
