#pragma once

#include <memory>
#include <string>

#include "jetnoether/parser.hpp"
#include "jetnoether/render.hpp"

namespace jetnoether::testing {

// (t, x) | u (dummy v)
inline SpacePtr kdv_space() {
    return std::make_shared<Space>(std::vector<std::string>{"t", "x"},
                                   std::vector<std::string>{"u"},
                                   std::vector<std::string>{"v"});
}

// (t, x) | u (dummy v) | a != 0
inline SpacePtr burgers_space() {
    return std::make_shared<Space>(
        std::vector<std::string>{"t", "x"}, std::vector<std::string>{"u"},
        std::vector<std::string>{"v"},
        std::vector<std::pair<std::string, bool>>{{"a", true}});
}

// (t, x) | u (dummy v) | c != 0
inline SpacePtr wave_space() {
    return std::make_shared<Space>(
        std::vector<std::string>{"t", "x"}, std::vector<std::string>{"u"},
        std::vector<std::string>{"v"},
        std::vector<std::pair<std::string, bool>>{{"c", true}});
}

// (t, x) | u (dummy v) | a != 0, c | g(t)
inline SpacePtr rich_space() {
    return std::make_shared<Space>(
        std::vector<std::string>{"t", "x"}, std::vector<std::string>{"u"},
        std::vector<std::string>{"v"},
        std::vector<std::pair<std::string, bool>>{{"a", true}, {"c", false}},
        std::vector<ParamFunctionDecl>{{"g", {0}}});
}

inline Expression E(const SpacePtr& sp, const std::string& text) {
    return parse_expression(sp, text);
}

inline DiffSystem kdv_system() {
    SpacePtr sp = kdv_space();
    return DiffSystem::with_leads(sp, {E(sp, "u_t + u*u_x + u_{xxx}")},
                                  {Atom::jet(0, false, MultiIndex{1, 0})});
}

inline DiffSystem burgers_system() {
    SpacePtr sp = burgers_space();
    return DiffSystem::with_leads(sp, {E(sp, "u_t + u*u_x - a*u_{xx}")},
                                  {Atom::jet(0, false, MultiIndex{1, 0})});
}

inline Generator make_generator(const SpacePtr& sp, const std::string& xi_t,
                                const std::string& xi_x, const std::string& phi,
                                const std::string& phi_star = "") {
    Generator g;
    g.space = sp;
    g.xi = {E(sp, xi_t), E(sp, xi_x)};
    g.phi = {E(sp, phi)};
    if (!phi_star.empty()) g.phi_star = std::vector<Expression>{E(sp, phi_star)};
    return g;
}

} // namespace jetnoether::testing
