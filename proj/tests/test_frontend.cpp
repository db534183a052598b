#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "jetnoether/errors.hpp"
#include "jetnoether/report.hpp"

using namespace jetnoether;
using namespace jetnoether::testing;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string problem_path(const std::string& name) {
    return std::string(PROBLEMS_DIR) + "/" + name;
}

} // namespace

TEST_CASE("parsing a problem file builds the declared system") {
    ProblemFile pf = parse_problem(slurp(problem_path("burgers.prob")));
    CHECK(pf.space->independent_names() == std::vector<std::string>{"t", "x"});
    CHECK(pf.space->field_names() == std::vector<std::string>{"u"});
    CHECK(pf.space->dummy_names() == std::vector<std::string>{"v"});
    CHECK(pf.space->parameter_nonzero(0));
    CHECK(pf.system().equation(0) == E(pf.space, "u_t + u*u_x - a*u_{xx}"));
    REQUIRE(pf.system().solved(0));
    CHECK(pf.system().solved(0)->lead == Atom::jet(0, false, {1, 0}));
    CHECK(pf.balance_mode == BalanceMode::Explicit);
    CHECK(pf.balance == E(pf.space, "a*u*u_{xx}"));
    CHECK(pf.generators.size() == 5);
    CHECK(pf.find_generator("X3")->gen.xi[1] == E(pf.space, "t"));
}

TEST_CASE("the FW equation parses with its annotated lead") {
    ProblemFile pf = parse_problem(slurp(problem_path("fw.prob")));
    CHECK(pf.system().equation(0) ==
          E(pf.space, "u_t - u_{xxt} + u_x + u*u_x - 3*u_x*u_{xx} - u*u_{xxx}"));
    CHECK(pf.system().solved(0)->lead == Atom::jet(0, false, {1, 2}));
}

TEST_CASE("derivative subscripts normalize to the declared order") {
    SpacePtr sp = kdv_space();
    CHECK(E(sp, "u_{xt}") == E(sp, "u_{tx}"));
    CHECK(E(sp, "u_{xxt}") == E(sp, "u_{txx}"));
    CHECK(render(E(sp, "u_{xt}"), *sp) == "u_{tx}");
}

TEST_CASE("syntax errors carry positions and expectations") {
    std::string text = "jetnoether v1\n"
                       "independent: t, x;\n"
                       "dependent: u;\n"
                       "system {\n"
                       "  F: u_t + u*(;\n"
                       "}\n";
    try {
        parse_problem(text);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& ex) {
        CHECK(ex.line == 5);
        CHECK(std::string(ex.what()).find("expected") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_problem("nota file"), SyntaxError);
}

TEST_CASE("semantic errors: undeclared names, arity, equation count") {
    std::string base = "jetnoether v1\nindependent: t, x;\ndependent: u;\n";
    CHECK_THROWS_AS(parse_problem(base + "system { F: u_t + w; }"), SemanticError);
    CHECK_THROWS_AS(parse_problem(base + "system { F: u_t; G: u_x; }"), SemanticError);
    CHECK_THROWS_AS(
        parse_problem("jetnoether v1\nindependent: t, x;\ndependent: u;\n"
                      "functions: g(t);\nsystem { F: u_t + g(t, x); }"),
        SemanticError);
    CHECK_THROWS_AS(
        parse_problem("jetnoether v1\nindependent: t;\ndependent: t;\nsystem { F: t_t; }"),
        SemanticError);
}

TEST_CASE("round trip: render(parse(text)) reparses identically") {
    for (const char* name : {"kdv.prob", "burgers.prob", "fw.prob", "wave.prob",
                             "euler.prob"}) {
        ProblemFile pf = parse_problem(slurp(problem_path(name)));
        ProblemFile again = parse_problem(render_problem(pf));
        CHECK(problems_equal(pf, again));
    }
}

TEST_CASE("adjoint command and exit-status contract") {
    ProblemFile burgers = parse_problem(slurp(problem_path("burgers.prob")));
    CommandOptions opts;
    CommandResult res = run_command("adjoint", burgers, opts);
    CHECK(res.exit_code == 0);
    CHECK(res.json["verdict"] == "self-adjoint");
    CHECK(res.json["equations"][0]["adjoint"] ==
          "-u*v_x + 2*u_{xx}*a - v_t - v_{xx}*a");

    // the unmodified formal Lagrangian is a verified negative
    opts.balance_override = BalanceMode::Formal;
    res = run_command("adjoint", burgers, opts);
    CHECK(res.exit_code == 1);
    CHECK(res.json["verdict"] == "not-self-adjoint");
}

TEST_CASE("conserve command emits reparseable law reports") {
    ProblemFile burgers = parse_problem(slurp(problem_path("burgers.prob")));
    CommandOptions opts;
    opts.generators = {"X3"};
    CommandResult res = run_command("conserve", burgers, opts);
    REQUIRE(res.exit_code == 0);
    const auto& law = res.json["laws"][0];
    CHECK(law["triviality"] == "nontrivial");
    CHECK(law["residual"] == "zero");
    CHECK(law["characteristics"]["u"] == "1");
    // JSON re-ingestion: all expression strings parse back to canonical form
    for (const auto& [key, value] : law["fluxes"].items()) {
        Expression e = parse_expression(burgers.space, value.get<std::string>());
        CHECK(render(e, *burgers.space) == value.get<std::string>());
    }
    Expression pt = parse_expression(burgers.space,
                                     law["fluxes"]["t"].get<std::string>());
    Expression px = parse_expression(burgers.space,
                                     law["fluxes"]["x"].get<std::string>());
    CHECK(divergence(FluxTuple{burgers.space, {pt, px}}) == burgers.system().equation(0));
}

TEST_CASE("verify and divtest commands") {
    ProblemFile euler = parse_problem(slurp(problem_path("euler.prob")));
    CommandOptions opts;
    CommandResult res = run_command("verify", euler, opts);
    CHECK(res.exit_code == 0);
    CHECK(res.json["laws"].size() == 2);
    for (const auto& l : res.json["laws"]) {
        CHECK(l["residual"] == "zero");
        CHECK(l["triviality"] == "nontrivial");
    }

    ProblemFile kdv = parse_problem(slurp(problem_path("kdv.prob")));
    opts.expression = "u_x*u_{xx}";
    res = run_command("divtest", kdv, opts);
    CHECK(res.exit_code == 0);
    CHECK(res.json["fluxes"]["x"] == "1/2*u_x^2");
    opts.expression = "u*u_x*u_{xx}";
    res = run_command("divtest", kdv, opts);
    CHECK(res.exit_code == 1);

    // an invalid user law is a verified negative
    ProblemFile bad = parse_problem(
        "jetnoether v1\nindependent: t, x;\ndependent: u;\n"
        "system { F: u_t + u*u_x solve u_t; }\n"
        "laws { wrong: Q = (1), P = (u, u); }\n");
    CommandOptions vopts;
    res = run_command("verify", bad, vopts);
    CHECK(res.exit_code == 1);
}

TEST_CASE("rotation extensions on the Euler system add the dummy rotation") {
    ProblemFile euler = parse_problem(slurp(problem_path("euler.prob")));
    ModifiedLagrangian ml = euler.make_lagrangian();
    Generator y = extend_balanced(euler.find_generator("R12")->gen, ml);
    REQUIRE(y.phi_star);
    CHECK((*y.phi_star)[0] == E(euler.space, "-v2"));
    CHECK((*y.phi_star)[1] == E(euler.space, "v1"));
    CHECK((*y.phi_star)[2].is_zero());
    CHECK((*y.phi_star)[3].is_zero());
}

TEST_CASE("variational laws fold Euler-expression scalings into Q") {
    // E_u(L) = 2F here; the reported law must still close against F
    ProblemFile pf = parse_problem(
        "jetnoether v1\nindependent: t, x;\ndependent: u;\nparameters: c != 0;\n"
        "system { F: u_{tt} - c^2*u_{xx} solve u_{tt}; }\n"
        "lagrangian: -u_t^2 + c^2*u_x^2;\n"
        "generators { X1: xi = (1, 0), phi = (0); }\n");
    CommandOptions opts;
    CommandResult res = run_command("conserve", pf, opts);
    CHECK(res.exit_code == 0);
    CHECK(res.json["laws"][0]["residual"] == "zero");
    CHECK(res.json["laws"][0]["characteristics"]["u"] == "-2*u_t");
}

TEST_CASE("check-sym command") {
    ProblemFile kdv = parse_problem(slurp(problem_path("kdv.prob")));
    CommandOptions opts;
    opts.generators = {"X1", "X2", "X3", "X4"};
    CHECK(run_command("check-sym", kdv, opts).exit_code == 0);

    ProblemFile with_bad = parse_problem(
        "jetnoether v1\nindependent: t, x;\ndependent: u;\n"
        "system { F: u_t + u*u_x + u_{xxx} solve u_t; }\n"
        "generators { W: xi = (0, 0), phi = (u); }\n");
    CommandOptions o2;
    CHECK(run_command("check-sym", with_bad, o2).exit_code == 1);
}

TEST_CASE("unknown commands and generators are reported as errors") {
    ProblemFile kdv = parse_problem(slurp(problem_path("kdv.prob")));
    CommandOptions opts;
    CHECK(run_command("frobnicate", kdv, opts).exit_code == 2);
    opts.generators = {"nope"};
    CHECK(run_command("conserve", kdv, opts).exit_code == 2);
}
