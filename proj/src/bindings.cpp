#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jetnoether/render.hpp"
#include "jetnoether/report.hpp"

namespace py = pybind11;

namespace {

using namespace jetnoether;

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
        py::list out;
        for (const auto& item : j) out.append(json_to_py(item));
        return out;
    }
    case nlohmann::json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = json_to_py(it.value());
        return out;
    }
    default: return py::none();
    }
}

/// A parsed problem file with the same commands the CLI exposes.
class Problem {
public:
    explicit Problem(const std::string& text) : pf_(parse_problem(text)) {}

    std::vector<std::string> generator_names() const {
        std::vector<std::string> out;
        for (const auto& g : pf_.generators) out.push_back(g.name);
        return out;
    }

    std::vector<std::string> equations() const {
        std::vector<std::string> out;
        for (std::size_t a = 0; a < pf_.system().size(); ++a)
            out.push_back(render(pf_.system().equation(a), *pf_.space));
        return out;
    }

    std::string render_canonical() const { return render_problem(pf_); }

    std::string normalize(const std::string& expr) const {
        return render(parse_expression(pf_.space, expr), *pf_.space);
    }

    py::dict run(const std::string& command, const std::vector<std::string>& gen,
                 const std::string& mode, bool strict, const std::string& balance,
                 const std::string& expr, const std::vector<std::string>& laws,
                 int max_k_order, int ansatz_degree) const {
        CommandOptions opts;
        opts.generators = gen;
        opts.laws = laws;
        opts.mode = mode;
        opts.strict_selfadjoint = strict;
        opts.expression = expr;
        opts.k_options.max_order = max_k_order;
        opts.k_options.ansatz_degree = ansatz_degree;
        if (balance == "generic")
            opts.balance_override = BalanceMode::Generic;
        else if (balance == "formal")
            opts.balance_override = BalanceMode::Formal;
        CommandResult res = run_command(command, pf_, opts);
        py::dict out;
        out["exit_code"] = res.exit_code;
        out["text"] = res.text;
        out["report"] = json_to_py(res.json);
        return out;
    }

private:
    ProblemFile pf_;
};

} // namespace

PYBIND11_MODULE(_jetnoether, m) {
    m.doc() = "Jet-space calculus, modified formal Lagrangians and conservation laws";
    m.attr("__version__") = "1.0.0";

    py::register_exception<jetnoether::Error>(m, "JetNoetherError");

    py::class_<Problem>(m, "Problem")
        .def(py::init<const std::string&>(), py::arg("text"),
             "Parse a problem file (jetnoether v1)")
        .def_property_readonly("generator_names", &Problem::generator_names)
        .def_property_readonly("equations", &Problem::equations)
        .def("render", &Problem::render_canonical, "Canonical text of the problem file")
        .def("normalize", &Problem::normalize, py::arg("expression"),
             "Parse an expression and return its canonical rendering")
        .def("run", &Problem::run, py::arg("command"), py::arg("gen") = std::vector<std::string>{},
             py::arg("mode") = "balanced", py::arg("strict") = true, py::arg("balance") = "",
             py::arg("expr") = "", py::arg("laws") = std::vector<std::string>{},
             py::arg("max_k_order") = 2, py::arg("ansatz_degree") = -1,
             "Run a command (adjoint, check-sym, extend, conserve, verify, divtest) and "
             "return exit_code, text and the JSON report as a dict");
}
