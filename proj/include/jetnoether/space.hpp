#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jetnoether/errors.hpp"

namespace jetnoether {

/// Declaration of a formal parameter-function, e.g. g(t): name plus the
/// indices of the independent variables it depends on.
struct ParamFunctionDecl {
    std::string name;
    std::vector<std::size_t> args;
};

/// Immutable symbol table shared by all expressions of one problem:
/// independent variables, dependent fields with their paired dummy fields,
/// named parameters, and parameter-functions.
class Space {
public:
    Space(std::vector<std::string> independent,
          std::vector<std::string> fields,
          std::vector<std::string> dummies = {},
          std::vector<std::pair<std::string, bool>> parameters = {},
          std::vector<ParamFunctionDecl> functions = {})
        : independent_(std::move(independent)), fields_(std::move(fields)),
          dummies_(std::move(dummies)), functions_(std::move(functions)) {
        if (dummies_.empty())
            for (const auto& f : fields_) dummies_.push_back("v" + f);
        if (dummies_.size() != fields_.size())
            throw Error("dummy names must pair one-to-one with dependent fields");
        for (auto& [name, nz] : parameters) {
            param_names_.push_back(name);
            param_nonzero_.push_back(nz);
        }
    }

    std::size_t num_independent() const { return independent_.size(); }
    std::size_t num_fields() const { return fields_.size(); }
    std::size_t num_parameters() const { return param_names_.size(); }
    std::size_t num_functions() const { return functions_.size(); }

    const std::string& independent_name(std::size_t i) const { return independent_[i]; }
    const std::string& field_name(std::size_t a) const { return fields_[a]; }
    const std::string& dummy_name(std::size_t a) const { return dummies_[a]; }
    const std::string& parameter_name(std::size_t k) const { return param_names_[k]; }
    bool parameter_nonzero(std::size_t k) const { return param_nonzero_[k]; }
    const ParamFunctionDecl& function_decl(std::size_t k) const { return functions_[k]; }

    const std::vector<std::string>& independent_names() const { return independent_; }
    const std::vector<std::string>& field_names() const { return fields_; }
    const std::vector<std::string>& dummy_names() const { return dummies_; }

    int independent_index(const std::string& s) const { return find(independent_, s); }
    int field_index(const std::string& s) const { return find(fields_, s); }
    int dummy_index(const std::string& s) const { return find(dummies_, s); }
    int parameter_index(const std::string& s) const { return find(param_names_, s); }
    int function_index(const std::string& s) const {
        for (std::size_t k = 0; k < functions_.size(); ++k)
            if (functions_[k].name == s) return (int)k;
        return -1;
    }

private:
    static int find(const std::vector<std::string>& v, const std::string& s) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] == s) return (int)i;
        return -1;
    }

    std::vector<std::string> independent_;
    std::vector<std::string> fields_;
    std::vector<std::string> dummies_;
    std::vector<std::string> param_names_;
    std::vector<bool> param_nonzero_;
    std::vector<ParamFunctionDecl> functions_;
};

using SpacePtr = std::shared_ptr<const Space>;

} // namespace jetnoether
