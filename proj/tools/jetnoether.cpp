#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jetnoether/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw jetnoether::Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Args {
    std::string file;
    std::string format = "text";
    std::string gens;
    std::string laws;
    std::string mode = "balanced";
    std::string balance;
    std::string expression;
    bool strict = true;
    int ansatz_degree = -1;
    int max_k_order = 2;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run(const std::string& command, const Args& args) {
    using namespace jetnoether;
    CommandOptions opts;
    opts.generators = split_list(args.gens);
    opts.laws = split_list(args.laws);
    opts.mode = args.mode;
    opts.strict_selfadjoint = args.strict;
    opts.k_options.ansatz_degree = args.ansatz_degree;
    opts.k_options.max_order = args.max_k_order;
    opts.expression = args.expression;
    if (args.balance == "generic")
        opts.balance_override = BalanceMode::Generic;
    else if (args.balance == "formal")
        opts.balance_override = BalanceMode::Formal;
    else if (!args.balance.empty() && args.balance != "file") {
        std::cerr << "error: --balance must be one of generic, formal, file\n";
        return 2;
    }

    CommandResult res;
    try {
        ProblemFile pf = parse_problem(slurp(args.file));
        res = run_command(command, pf, opts);
    } catch (const Error& ex) {
        res.exit_code = 2;
        res.text = std::string("error: ") + ex.what() + "\n";
        res.json = {{"command", command}, {"status", "error"}, {"error", ex.what()}};
    }
    if (args.format == "json")
        std::cout << res.json.dump(2) << "\n";
    else
        std::cout << res.text;
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jetnoether: modified formal Lagrangians, self-adjointness and "
                 "conservation laws of PDE systems"};
    app.require_subcommand(1);

    Args args;
    auto add_common = [&](CLI::App* cmd, bool with_gens = true) {
        cmd->add_option("file", args.file, "problem file (jetnoether v1)")->required();
        cmd->add_option("--format", args.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_gens)
            cmd->add_option("--gen", args.gens, "comma-separated generator names (default: all)");
        cmd->add_flag("--strict-selfadjoint,!--no-strict-selfadjoint", args.strict,
                      "require r = -F exactly (default on)");
        cmd->add_option("--ansatz-degree", args.ansatz_degree,
                        "polynomial degree bound for K extraction (-1: automatic)");
        cmd->add_option("--max-k-order", args.max_k_order,
                        "highest derivative order |J| tried in K extraction");
        cmd->add_option("--balance", args.balance,
                        "override the file's balance block: generic|formal|file");
        return cmd;
    };

    add_common(app.add_subcommand("adjoint",
                                  "print the (modified) adjoint system and the "
                                  "self-adjointness verdict"),
               false);
    add_common(app.add_subcommand("check-sym", "check the linearized symmetry condition"));
    auto* extend = add_common(
        app.add_subcommand("extend", "extend symmetries to variational symmetries"));
    extend->add_option("--mode", args.mode, "extension route: generic|balanced")
        ->check(CLI::IsMember({"generic", "balanced"}));
    auto* conserve = add_common(app.add_subcommand(
        "conserve", "derive conservation laws: extend, apply Noether's construction, "
                    "substitute dummies, classify triviality"));
    conserve->add_option("--mode", args.mode, "extension route: generic|balanced")
        ->check(CLI::IsMember({"generic", "balanced"}));
    auto* verify = add_common(
        app.add_subcommand("verify", "check declared Q/P law candidates against the system"),
        false);
    verify->add_option("--law", args.laws, "comma-separated law names (default: all)");
    auto* divtest = add_common(
        app.add_subcommand("divtest", "divergence test and flux reconstruction"), false);
    divtest->add_option("--expr", args.expression, "expression to test")->required();

    CLI11_PARSE(app, argc, argv);
    return run(app.get_subcommands().front()->get_name(), args);
}
