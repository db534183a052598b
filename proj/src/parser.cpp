#include "jetnoether/parser.hpp"

#include <algorithm>
#include <cctype>

#include "jetnoether/errors.hpp"
#include "jetnoether/render.hpp"

namespace jetnoether {

namespace {

enum class Tok {
    Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBrace, RBrace,
    Underscore, Prime, Equals, Comma, Colon, Semi, BangEq, End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::Caret: return "'^'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Underscore: return "'_'";
    case Tok::Prime: return "'''";
    case Tok::Equals: return "'='";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::BangEq: return "'!='";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string s) { out.push_back({k, std::move(s), line, col}); };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++line; col = 1; ++i; continue; }
        if (std::isspace((unsigned char)c)) { ++col; ++i; continue; }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int start_col = col;
        if (std::isalpha((unsigned char)c)) {
            std::string s;
            while (i < text.size() && std::isalnum((unsigned char)text[i])) { s += text[i++]; ++col; }
            out.push_back({Tok::Ident, std::move(s), line, start_col});
            continue;
        }
        if (std::isdigit((unsigned char)c)) {
            std::string s;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) { s += text[i++]; ++col; }
            out.push_back({Tok::Int, std::move(s), line, start_col});
            continue;
        }
        if (c == '!' && i + 1 < text.size() && text[i + 1] == '=') {
            push(Tok::BangEq, "!=");
            i += 2; col += 2;
            continue;
        }
        Tok k;
        switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case '{': k = Tok::LBrace; break;
        case '}': k = Tok::RBrace; break;
        case '_': k = Tok::Underscore; break;
        case '\'': k = Tok::Prime; break;
        case '=': k = Tok::Equals; break;
        case ',': k = Tok::Comma; break;
        case ':': k = Tok::Colon; break;
        case ';': k = Tok::Semi; break;
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        push(k, std::string(1, c));
        ++i; ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    const Token& peek(std::size_t ahead = 0) const {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    bool accept_ident(const std::string& s) {
        if (peek().kind != Tok::Ident || peek().text != s) return false;
        ++pos_;
        return true;
    }
    Token expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw SyntaxError("expected " + what + " (" + tok_name(k) + "), found " +
                                  tok_name(peek().kind) +
                                  (peek().text.empty() ? "" : " '" + peek().text + "'"),
                              peek().line, peek().col);
        return toks_[pos_++];
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(msg, peek().line, peek().col);
    }
    [[noreturn]] void fail_semantic(const std::string& msg) const {
        throw SemanticError(msg, peek().line, peek().col);
    }
    SourcePos here() const { return {peek().line, peek().col}; }

    // ---- expression grammar -------------------------------------------
    Expression parse_expression(const SpacePtr& sp) {
        Expression e = parse_term(sp);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bool minus = next().kind == Tok::Minus;
            Expression t = parse_term(sp);
            e = minus ? e - t : e + t;
        }
        return e;
    }

private:
    Expression parse_term(const SpacePtr& sp) {
        Expression e = parse_factor(sp);
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            bool div = next().kind == Tok::Slash;
            const Token& at = peek();
            Expression f = parse_factor(sp);
            if (div) {
                try {
                    e = e / f;
                } catch (const Error& ex) {
                    throw SemanticError(ex.what(), at.line, at.col);
                }
                check_nonzero_divisor(sp, f);
            } else {
                e = e * f;
            }
        }
        return e;
    }

    void check_nonzero_divisor(const SpacePtr& sp, const Expression& f) {
        f.for_each_atom([&](const Atom& a) {
            if (a.is_parameter() && !sp->parameter_nonzero(a.index))
                fail_semantic("division by parameter '" + sp->parameter_name(a.index) +
                              "' not flagged nonzero");
        });
    }

    Expression parse_factor(const SpacePtr& sp) {
        bool neg = false;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
            if (next().kind == Tok::Minus) neg = !neg;
        Expression e = parse_primary(sp);
        if (accept(Tok::Caret)) {
            Token t = expect(Tok::Int, "integer exponent");
            e = e.pow(std::stoi(t.text));
        }
        return neg ? -e : e;
    }

    Expression parse_primary(const SpacePtr& sp) {
        if (peek().kind == Tok::Int) {
            Token t = next();
            return Expression::constant(Rational(std::stoll(t.text))) +
                   Expression::from_terms(sp, {});
        }
        if (accept(Tok::LParen)) {
            Expression e = parse_expression(sp);
            expect(Tok::RParen, "closing parenthesis");
            return e;
        }
        if (peek().kind == Tok::Ident) return parse_atom_ref(sp);
        fail("expected a number, '(' or an identifier");
    }

    Expression parse_atom_ref(const SpacePtr& sp) {
        Token name = expect(Tok::Ident, "identifier");
        int idx;
        if ((idx = sp->independent_index(name.text)) >= 0)
            return Expression::from_atom(sp, Atom::independent(idx));
        if ((idx = sp->parameter_index(name.text)) >= 0)
            return Expression::from_atom(sp, Atom::parameter(idx));
        if ((idx = sp->function_index(name.text)) >= 0) return parse_function_ref(sp, idx);
        bool dummy = false;
        idx = sp->field_index(name.text);
        if (idx < 0) {
            idx = sp->dummy_index(name.text);
            dummy = true;
        }
        if (idx < 0)
            throw SemanticError("undeclared identifier '" + name.text + "'", name.line, name.col);
        MultiIndex j(sp->num_independent());
        if (accept(Tok::Underscore)) j = parse_subscript(sp);
        return Expression::from_atom(sp, Atom::jet(idx, dummy, std::move(j)));
    }

    MultiIndex parse_subscript(const SpacePtr& sp) {
        std::string sub;
        Token at = peek();
        if (accept(Tok::LBrace)) {
            while (peek().kind == Tok::Ident) sub += next().text;
            expect(Tok::RBrace, "closing brace of the derivative subscript");
        } else {
            sub = expect(Tok::Ident, "derivative subscript").text;
        }
        // greedy longest-match decomposition into independent variable names
        MultiIndex j(sp->num_independent());
        std::size_t k = 0;
        while (k < sub.size()) {
            int best = -1;
            std::size_t best_len = 0;
            for (std::size_t i = 0; i < sp->num_independent(); ++i) {
                const std::string& v = sp->independent_name(i);
                if (v.size() > best_len && sub.compare(k, v.size(), v) == 0) {
                    best = (int)i;
                    best_len = v.size();
                }
            }
            if (best < 0)
                throw SemanticError("cannot resolve derivative subscript '" + sub +
                                        "' against the declared independent variables",
                                    at.line, at.col);
            j = j.plus_unit((std::size_t)best);
            k += best_len;
        }
        return j;
    }

    Expression parse_function_ref(const SpacePtr& sp, int idx) {
        const auto& decl = sp->function_decl(idx);
        int primes = 0;
        while (accept(Tok::Prime)) ++primes;
        if (primes > 0 && decl.args.size() != 1)
            fail_semantic("derivative primes require a single-argument function");
        expect(Tok::LParen, "function argument list");
        std::vector<std::string> args;
        if (peek().kind != Tok::RParen) {
            do {
                args.push_back(expect(Tok::Ident, "argument name").text);
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "closing parenthesis of the argument list");
        if (args.size() != decl.args.size())
            fail_semantic("function '" + decl.name + "' expects " +
                          std::to_string(decl.args.size()) + " argument(s)");
        for (std::size_t i = 0; i < args.size(); ++i)
            if (args[i] != sp->independent_name(decl.args[i]))
                fail_semantic("function '" + decl.name + "' is declared with argument '" +
                              sp->independent_name(decl.args[i]) + "'");
        MultiIndex d(decl.args.size());
        for (int k = 0; k < primes; ++k) d = d.plus_unit(0);
        return Expression::from_atom(sp, Atom::param_function(idx, std::move(d)));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

struct Declarations {
    std::vector<std::string> independent;
    std::vector<std::string> dependent;
    std::vector<std::string> dummy;
    std::vector<std::pair<std::string, bool>> parameters;
    std::vector<std::pair<std::string, std::vector<std::string>>> functions;
};

class ProblemParser : Parser {
public:
    explicit ProblemParser(const std::string& text) : Parser(text) {}

    ProblemFile run() {
        if (!accept_ident("jetnoether"))
            fail("problem files start with the header line 'jetnoether v1'");
        if (!accept_ident("v1")) fail("unsupported problem file version (expected 'v1')");

        std::vector<Expression> equations;
        std::vector<std::optional<Atom>> leads;
        bool seen_system = false;

        while (peek().kind != Tok::End) {
            Token section = expect(Tok::Ident, "section name");
            const std::string& s = section.text;
            if (s == "independent" || s == "dependent" || s == "dummy" || s == "parameters" ||
                s == "functions") {
                if (space_)
                    throw SemanticError("declarations must precede the system block",
                                        section.line, section.col);
                parse_declaration(s);
            } else if (s == "system") {
                ensure_space();
                seen_system = true;
                expect(Tok::LBrace, "system block");
                while (!accept(Tok::RBrace)) {
                    Token name = expect(Tok::Ident, "equation name");
                    expect(Tok::Colon, "':' after the equation name");
                    pf_.equation_names.push_back(name.text);
                    equations.push_back(parse_expression(space_));
                    if (accept_ident("solve")) {
                        Expression lead = parse_expression(space_);
                        leads.push_back(single_jet_atom(lead, name));
                    } else {
                        leads.push_back(std::nullopt);
                    }
                    expect(Tok::Semi, "';' after the equation");
                }
            } else if (s == "balance") {
                ensure_space();
                expect(Tok::Colon, "':' after 'balance'");
                if (accept_ident("generic")) {
                    pf_.balance_mode = BalanceMode::Generic;
                } else {
                    pf_.balance_mode = BalanceMode::Explicit;
                    pf_.balance = parse_expression(space_);
                }
                expect(Tok::Semi, "';' after the balance");
            } else if (s == "lagrangian") {
                ensure_space();
                expect(Tok::Colon, "':' after 'lagrangian'");
                pf_.balance_mode = BalanceMode::Variational;
                pf_.lagrangian = parse_expression(space_);
                expect(Tok::Semi, "';' after the Lagrangian");
            } else if (s == "substitution") {
                ensure_space();
                expect(Tok::LBrace, "substitution block");
                pf_.has_substitution = true;
                while (!accept(Tok::RBrace)) {
                    Token name = expect(Tok::Ident, "dummy variable name");
                    int d = space_->dummy_index(name.text);
                    if (d < 0)
                        throw SemanticError("'" + name.text + "' is not a dummy field",
                                            name.line, name.col);
                    expect(Tok::Equals, "'=' in the substitution rule");
                    Expression rhs = parse_expression(space_);
                    if (rhs.has_dummy())
                        throw SemanticError("substitution target must depend on (x,[u]) only",
                                            name.line, name.col);
                    pf_.substitution.emplace(
                        Atom::jet(d, true, MultiIndex(space_->num_independent())), rhs);
                    expect(Tok::Semi, "';' after the substitution rule");
                }
            } else if (s == "generators") {
                ensure_space();
                parse_generators();
            } else if (s == "laws") {
                ensure_space();
                parse_laws();
            } else {
                throw SyntaxError("unknown section '" + s + "'", section.line, section.col);
            }
        }

        if (!seen_system) fail("problem file has no system block");
        if (equations.size() != space_->num_fields())
            fail_semantic("expected exactly one equation per dependent field");

        std::vector<Atom> all_leads;
        for (std::size_t a = 0; a < equations.size(); ++a)
            all_leads.push_back(leads[a] ? *leads[a] : DiffSystem::pick_lead(equations[a]));
        pf_.sys = DiffSystem::with_leads(space_, std::move(equations), std::move(all_leads));
        validate_references();
        return std::move(pf_);
    }

private:
    void parse_declaration(const std::string& s) {
        expect(Tok::Colon, "':' after '" + s + "'");
        if (s == "parameters") {
            do {
                Token n = expect(Tok::Ident, "parameter name");
                bool nz = false;
                if (accept(Tok::BangEq)) {
                    Token z = expect(Tok::Int, "0");
                    if (z.text != "0") fail("parameters can only be flagged '!= 0'");
                    nz = true;
                }
                decls_.parameters.emplace_back(n.text, nz);
            } while (accept(Tok::Comma));
        } else if (s == "functions") {
            do {
                Token n = expect(Tok::Ident, "function name");
                expect(Tok::LParen, "argument list");
                std::vector<std::string> args;
                do {
                    args.push_back(expect(Tok::Ident, "argument name").text);
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "closing parenthesis");
                decls_.functions.emplace_back(n.text, std::move(args));
            } while (accept(Tok::Comma));
        } else {
            auto& v = s == "independent" ? decls_.independent
                      : s == "dependent" ? decls_.dependent
                                         : decls_.dummy;
            do {
                v.push_back(expect(Tok::Ident, "name").text);
            } while (accept(Tok::Comma));
        }
        expect(Tok::Semi, "';' after the declaration");
    }

    void ensure_space() {
        if (space_) return;
        if (decls_.independent.empty()) fail_semantic("no independent variables declared");
        if (decls_.dependent.empty()) fail_semantic("no dependent fields declared");
        std::vector<ParamFunctionDecl> fns;
        for (const auto& [name, args] : decls_.functions) {
            ParamFunctionDecl d;
            d.name = name;
            for (const auto& a : args) {
                auto it = std::find(decls_.independent.begin(), decls_.independent.end(), a);
                if (it == decls_.independent.end())
                    fail_semantic("function argument '" + a + "' is not an independent variable");
                d.args.push_back((std::size_t)(it - decls_.independent.begin()));
            }
            fns.push_back(std::move(d));
        }
        auto sp = std::make_shared<Space>(decls_.independent, decls_.dependent, decls_.dummy,
                                          decls_.parameters, std::move(fns));
        check_unique_names(*sp);
        space_ = std::move(sp);
        pf_.space = space_;
    }

    void check_unique_names(const Space& sp) {
        std::vector<std::string> all = sp.independent_names();
        auto add = [&](const std::string& n) {
            if (std::find(all.begin(), all.end(), n) != all.end())
                fail_semantic("duplicate declaration of '" + n + "'");
            all.push_back(n);
        };
        for (const auto& n : sp.field_names()) add(n);
        for (const auto& n : sp.dummy_names()) add(n);
        for (std::size_t k = 0; k < sp.num_parameters(); ++k) add(sp.parameter_name(k));
        for (std::size_t k = 0; k < sp.num_functions(); ++k) add(sp.function_decl(k).name);
    }

    std::optional<Atom> single_jet_atom(const Expression& e, const Token& at) {
        if (e.terms().size() != 1 || !e.denominator().is_one())
            throw SemanticError("'solve' expects a single jet variable", at.line, at.col);
        const auto& [m, c] = *e.terms().begin();
        if (!c.is_one() || m.factors().size() != 1 || m.factors()[0].second != 1 ||
            !m.factors()[0].first.is_jet() || m.factors()[0].first.dummy)
            throw SemanticError("'solve' expects a single jet variable of an original field",
                                at.line, at.col);
        return m.factors()[0].first;
    }

    std::vector<Expression> parse_tuple(std::size_t expected, const std::string& what) {
        expect(Tok::LParen, what + " tuple");
        std::vector<Expression> out;
        do {
            out.push_back(parse_expression(space_));
        } while (accept(Tok::Comma));
        expect(Tok::RParen, "closing parenthesis of the " + what + " tuple");
        if (out.size() != expected)
            fail_semantic(what + " tuple must have " + std::to_string(expected) + " component(s)");
        return out;
    }

    void parse_generators() {
        expect(Tok::LBrace, "generators block");
        while (!accept(Tok::RBrace)) {
            GeneratorDecl decl;
            decl.pos = here();
            Token name = expect(Tok::Ident, "generator name");
            decl.name = name.text;
            expect(Tok::Colon, "':' after the generator name");
            Generator g;
            g.space = space_;
            g.xi.assign(space_->num_independent(), Expression());
            g.phi.assign(space_->num_fields(), Expression());
            do {
                Token key = expect(Tok::Ident, "generator component (xi, phi or phistar)");
                expect(Tok::Equals, "'=' after the component name");
                if (key.text == "xi")
                    g.xi = parse_tuple(space_->num_independent(), "xi");
                else if (key.text == "phi")
                    g.phi = parse_tuple(space_->num_fields(), "phi");
                else if (key.text == "phistar")
                    g.phi_star = parse_tuple(space_->num_fields(), "phistar");
                else
                    throw SyntaxError("unknown generator component '" + key.text + "'",
                                      key.line, key.col);
            } while (accept(Tok::Comma));
            expect(Tok::Semi, "';' after the generator");
            decl.gen = std::move(g);
            pf_.generators.push_back(std::move(decl));
        }
    }

    void parse_laws() {
        expect(Tok::LBrace, "laws block");
        while (!accept(Tok::RBrace)) {
            LawDecl decl;
            decl.pos = here();
            Token name = expect(Tok::Ident, "law name");
            decl.name = name.text;
            expect(Tok::Colon, "':' after the law name");
            do {
                Token key = expect(Tok::Ident, "law component (Q or P)");
                expect(Tok::Equals, "'=' after the component name");
                if (key.text == "Q")
                    decl.q = parse_tuple(space_->num_fields(), "Q");
                else if (key.text == "P")
                    decl.p = parse_tuple(space_->num_independent(), "P");
                else
                    throw SyntaxError("unknown law component '" + key.text + "'", key.line,
                                      key.col);
            } while (accept(Tok::Comma));
            expect(Tok::Semi, "';' after the law");
            if (decl.q.empty() || decl.p.empty())
                fail_semantic("a law needs both Q and P tuples");
            pf_.laws.push_back(std::move(decl));
        }
    }

    void validate_references() {
        std::vector<std::string> names;
        for (const auto& g : pf_.generators) {
            if (std::find(names.begin(), names.end(), g.name) != names.end())
                throw SemanticError("duplicate generator '" + g.name + "'", g.pos.line,
                                    g.pos.column);
            names.push_back(g.name);
        }
        if (pf_.balance_mode == BalanceMode::Explicit && pf_.balance.has_dummy())
            throw SemanticError("balance function mentions a dummy field");
        for (const auto& g : pf_.generators) {
            for (const auto& e : g.gen.xi)
                if (e.has_dummy())
                    throw SemanticError("xi coefficients cannot mention dummy fields",
                                        g.pos.line, g.pos.column);
            for (const auto& e : g.gen.phi)
                if (e.has_dummy())
                    throw SemanticError("phi coefficients cannot mention dummy fields",
                                        g.pos.line, g.pos.column);
        }
    }

    Declarations decls_;
    SpacePtr space_;
    ProblemFile pf_;
};

} // namespace

const GeneratorDecl* ProblemFile::find_generator(const std::string& name) const {
    for (const auto& g : generators)
        if (g.name == name) return &g;
    return nullptr;
}

ModifiedLagrangian ProblemFile::make_lagrangian(std::optional<BalanceMode> override_mode) const {
    BalanceMode mode = override_mode.value_or(balance_mode);
    ModifiedLagrangian ml = [&] {
        switch (mode) {
        case BalanceMode::Formal: return ModifiedLagrangian::formal(system());
        case BalanceMode::Generic: return ModifiedLagrangian::generic(system());
        case BalanceMode::Explicit: return ModifiedLagrangian::with_balance(system(), balance);
        case BalanceMode::Variational:
            return ModifiedLagrangian::variational(system(), lagrangian);
        }
        throw Error("unreachable");
    }();
    if (has_substitution) ml = ml.with_substitution(substitution);
    return ml;
}

ProblemFile parse_problem(const std::string& text) { return ProblemParser(text).run(); }

Expression parse_expression(const SpacePtr& space, const std::string& text) {
    Parser p(text);
    Expression e = p.parse_expression(space);
    if (p.peek().kind != Tok::End) p.fail("trailing input after the expression");
    return e;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

std::string render_tuple(const std::vector<Expression>& es, const Space& sp) {
    std::string s = "(";
    for (std::size_t i = 0; i < es.size(); ++i) {
        if (i) s += ", ";
        s += render(es[i], sp);
    }
    return s + ")";
}

} // namespace

std::string render_problem(const ProblemFile& pf) {
    const Space& sp = *pf.space;
    std::string out = "jetnoether v1\n\n";
    out += "independent: " + join(sp.independent_names(), ", ") + ";\n";
    out += "dependent: " + join(sp.field_names(), ", ") + ";\n";
    out += "dummy: " + join(sp.dummy_names(), ", ") + ";\n";
    if (sp.num_parameters()) {
        out += "parameters: ";
        for (std::size_t k = 0; k < sp.num_parameters(); ++k) {
            if (k) out += ", ";
            out += sp.parameter_name(k);
            if (sp.parameter_nonzero(k)) out += " != 0";
        }
        out += ";\n";
    }
    if (sp.num_functions()) {
        out += "functions: ";
        for (std::size_t k = 0; k < sp.num_functions(); ++k) {
            const auto& d = sp.function_decl(k);
            if (k) out += ", ";
            std::vector<std::string> args;
            for (auto a : d.args) args.push_back(sp.independent_name(a));
            out += d.name + "(" + join(args, ", ") + ")";
        }
        out += ";\n";
    }
    out += "\nsystem {\n";
    for (std::size_t a = 0; a < pf.system().size(); ++a) {
        out += "  " + pf.equation_names[a] + ": " + render(pf.system().equation(a), sp);
        if (pf.system().solved(a))
            out += " solve " + render_atom(pf.system().solved(a)->lead, sp);
        out += ";\n";
    }
    out += "}\n";
    switch (pf.balance_mode) {
    case BalanceMode::Formal: break;
    case BalanceMode::Generic: out += "\nbalance: generic;\n"; break;
    case BalanceMode::Explicit: out += "\nbalance: " + render(pf.balance, sp) + ";\n"; break;
    case BalanceMode::Variational:
        out += "\nlagrangian: " + render(pf.lagrangian, sp) + ";\n";
        break;
    }
    if (pf.has_substitution) {
        out += "\nsubstitution {\n";
        for (const auto& [key, value] : pf.substitution)
            out += "  " + sp.dummy_name(key.index) + " = " + render(value, sp) + ";\n";
        out += "}\n";
    }
    if (!pf.generators.empty()) {
        out += "\ngenerators {\n";
        for (const auto& g : pf.generators) {
            out += "  " + g.name + ": xi = " + render_tuple(g.gen.xi, sp) +
                   ", phi = " + render_tuple(g.gen.phi, sp);
            if (g.gen.phi_star) out += ", phistar = " + render_tuple(*g.gen.phi_star, sp);
            out += ";\n";
        }
        out += "}\n";
    }
    if (!pf.laws.empty()) {
        out += "\nlaws {\n";
        for (const auto& l : pf.laws)
            out += "  " + l.name + ": Q = " + render_tuple(l.q, sp) +
                   ", P = " + render_tuple(l.p, sp) + ";\n";
        out += "}\n";
    }
    return out;
}

bool problems_equal(const ProblemFile& a, const ProblemFile& b) {
    const Space& sa = *a.space;
    const Space& sb = *b.space;
    if (sa.independent_names() != sb.independent_names() ||
        sa.field_names() != sb.field_names() || sa.dummy_names() != sb.dummy_names())
        return false;
    if (sa.num_parameters() != sb.num_parameters() || sa.num_functions() != sb.num_functions())
        return false;
    for (std::size_t k = 0; k < sa.num_parameters(); ++k)
        if (sa.parameter_name(k) != sb.parameter_name(k) ||
            sa.parameter_nonzero(k) != sb.parameter_nonzero(k))
            return false;
    for (std::size_t k = 0; k < sa.num_functions(); ++k)
        if (sa.function_decl(k).name != sb.function_decl(k).name ||
            sa.function_decl(k).args != sb.function_decl(k).args)
            return false;
    if (a.equation_names != b.equation_names) return false;
    if (a.system().size() != b.system().size()) return false;
    for (std::size_t i = 0; i < a.system().size(); ++i) {
        if (a.system().equation(i) != b.system().equation(i)) return false;
        const auto& la = a.system().solved(i);
        const auto& lb = b.system().solved(i);
        if (la.has_value() != lb.has_value()) return false;
        if (la && (!(la->lead == lb->lead) || la->rhs != lb->rhs)) return false;
    }
    if (a.balance_mode != b.balance_mode || a.balance != b.balance ||
        a.lagrangian != b.lagrangian)
        return false;
    if (a.has_substitution != b.has_substitution || a.substitution != b.substitution)
        return false;
    if (a.generators.size() != b.generators.size() || a.laws.size() != b.laws.size())
        return false;
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
        const auto& ga = a.generators[i];
        const auto& gb = b.generators[i];
        if (ga.name != gb.name || ga.gen.xi != gb.gen.xi || ga.gen.phi != gb.gen.phi ||
            ga.gen.phi_star != gb.gen.phi_star)
            return false;
    }
    for (std::size_t i = 0; i < a.laws.size(); ++i)
        if (a.laws[i].name != b.laws[i].name || a.laws[i].q != b.laws[i].q ||
            a.laws[i].p != b.laws[i].p)
            return false;
    return true;
}

} // namespace jetnoether
