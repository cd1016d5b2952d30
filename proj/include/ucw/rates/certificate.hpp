#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ucw/core/outward.hpp"

namespace ucw {

enum class Formula { h, psi, phi_afp, phi_main, phi_factored, phi_const_lambda, phi_cat0, km_rate };

/// for_all: d(x_n, Tx_n) < eps for every n >= bound.
/// exists: some N with k <= N <= bound has the diagnostic below eps.
enum class Guarantee { exists, for_all };

enum class Branch { main, otherwise, boundary_max };

/// Which residual the guarantee speaks about.
enum class Diagnostic { x_tx, x_ty };

inline const char* to_string(Formula f) {
    switch (f) {
    case Formula::h: return "h";
    case Formula::psi: return "psi";
    case Formula::phi_afp: return "phi_afp";
    case Formula::phi_main: return "phi_main";
    case Formula::phi_factored: return "phi_factored";
    case Formula::phi_const_lambda: return "phi_const_lambda";
    case Formula::phi_cat0: return "phi_cat0";
    case Formula::km_rate: return "km_rate";
    }
    return "?";
}

inline std::optional<Formula> formula_from_string(const std::string& s) {
    for (Formula f : {Formula::h, Formula::psi, Formula::phi_afp, Formula::phi_main, Formula::phi_factored,
                      Formula::phi_const_lambda, Formula::phi_cat0, Formula::km_rate})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

inline const char* to_string(Guarantee g) { return g == Guarantee::exists ? "exists" : "for_all"; }
inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::main: return "main";
    case Branch::otherwise: return "otherwise";
    case Branch::boundary_max: return "boundary_max";
    }
    return "?";
}
inline const char* to_string(Diagnostic d) { return d == Diagnostic::x_tx ? "d(x,Tx)" : "d(x,Ty)"; }

using InputValue = std::variant<double, Index, std::string>;

/// An evaluated bound together with everything needed to reproduce it.
struct RateCertificate {
    Formula formula = Formula::h;
    Index bound = 0;
    Guarantee guarantee = Guarantee::exists;
    Branch branch = Branch::main;
    Diagnostic diagnostic = Diagnostic::x_tx;
    Index k = 0;                 ///< lower end of the search window for exists-guarantees
    std::optional<Index> inner;  ///< the ceiling term before theta / the tail are applied
    std::vector<std::pair<std::string, InputValue>> inputs;
};

} // namespace ucw
