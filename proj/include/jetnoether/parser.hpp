#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetnoether/lagrangian.hpp"
#include "jetnoether/noether.hpp"

namespace jetnoether {

struct SourcePos {
    int line = 0;
    int column = 0;
};

struct GeneratorDecl {
    std::string name;
    Generator gen;
    SourcePos pos;
};

struct LawDecl {
    std::string name;
    std::vector<Expression> q; // one per dependent field
    std::vector<Expression> p; // one per independent variable
    SourcePos pos;
};

enum class BalanceMode { Formal, Generic, Explicit, Variational };

/// Parsed problem file: declarations, system, optional balance / Lagrangian,
/// substitution, named generators and candidate laws.
struct ProblemFile {
    SpacePtr space;
    std::vector<std::string> equation_names;
    std::optional<DiffSystem> sys;
    BalanceMode balance_mode = BalanceMode::Formal;
    Expression balance;    // Explicit mode
    Expression lagrangian; // Variational mode
    SubstitutionRules substitution;
    bool has_substitution = false;
    std::vector<GeneratorDecl> generators;
    std::vector<LawDecl> laws;

    const DiffSystem& system() const { return *sys; }
    const GeneratorDecl* find_generator(const std::string& name) const;

    /// The modified Lagrangian selected by the balance block (or an override).
    ModifiedLagrangian make_lagrangian(std::optional<BalanceMode> override_mode = {}) const;
};

/// Parses a problem file (versioned header line "jetnoether v1").  Throws
/// SyntaxError / SemanticError with source positions.
ProblemFile parse_problem(const std::string& text);

/// Parses a single expression against existing declarations.
Expression parse_expression(const SpacePtr& space, const std::string& text);

/// Canonical text form of a problem file; reparsing yields an equal problem.
std::string render_problem(const ProblemFile& pf);

bool problems_equal(const ProblemFile& a, const ProblemFile& b);

} // namespace jetnoether
