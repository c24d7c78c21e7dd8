#pragma once

// Closed forms: α±, generic coefficients, interaction terms, Rep and Char classes.

#include <array>
#include <vector>

#include "pcv/eigenvalue.hpp"
#include "pcv/kring.hpp"
#include "pcv/operators.hpp"
#include "pcv/wmodule.hpp"

namespace pcv {

constexpr int kMaxPunctures = 24;

struct AlphaCounts {
    long alpha_plus = 0;
    long alpha_minus = 0;
    friend bool operator==(const AlphaCounts& a, const AlphaCounts& b) {
        return a.alpha_plus == b.alpha_plus && a.alpha_minus == b.alpha_minus;
    }
};

// Throws TooManyPunctures, BackendMismatch, InvalidSpec (an eigenvalue ±1).
AlphaCounts alpha_counts(const std::vector<EigenClass>& eigs);

// (a_s, b_s, c_s, d_s)
std::array<LocalizedClass, 4> generic_coefficients(int s);

ModuleElement interaction_term(const std::vector<EigenClass>& eigs);
ModuleElement iterated_tube_closed_form(const std::vector<EigenClass>& eigs);

// Interaction part of the Rep class on its own.
LocalizedClass rep_interaction(int g, int r, const AlphaCounts& a, int s);
// Requires g >= 1 and s >= 1; throws NotPolynomial if the displayed class has a fractional coefficient.
LocalizedClass rep_class_closed(int g, int r, const std::vector<EigenClass>& eigs);

struct ReducibleClasses {
    LocalizedClass reducible;
    LocalizedClass diag_quotient;
};
ReducibleClasses reducible_and_diag_classes(int g, const std::vector<EigenClass>& eigs);

// The two routes to the character-variety class. The assembly route takes the pipeline Rep class:
// rep/(q^3-q) for r > 0, diag + (rep - reducible)/(q^3-q) for r = 0.
struct CharRoutes {
    LocalizedClass display;
    LocalizedClass assembly;
};
CharRoutes char_class_routes(const SurfaceSpec& spec, const OperatorData& data);
// The assembly route alone; requires g >= 1 and s >= 1 after reduction.
LocalizedClass char_class_assembly(const SurfaceSpec& spec, const OperatorData& data);
// The closed display; char_class_closed also requires a polynomial result.
LocalizedClass char_display(const SurfaceSpec& spec);
LocalizedClass char_class_closed(const SurfaceSpec& spec);

}  // namespace pcv
