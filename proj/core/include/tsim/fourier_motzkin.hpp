// ============================================================================
// tsim/fourier_motzkin.hpp — Variable elimination for general linear atoms
// ============================================================================
//
// The zone layer eliminates variables from difference constraints by
// projection of a canonical DBM. This module provides the general form for
// conjunctions of arbitrary linear inequalities
//
//     c1*x1 + ... + cn*xn  (< or <=)  d
//
// with integer coefficients: classical Fourier-Motzkin elimination. An atom
// where the eliminated variable occurs positively yields an upper bound,
// a negative occurrence a lower bound; every upper/lower pair combines into
// a new atom with the variable cancelled, and all atoms mentioning the
// variable are dropped.
//
// On difference-shaped atoms (at most one +1 and one -1 coefficient) this
// agrees exactly with the DBM projection, which the tests exercise.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsim/rational.hpp"
#include "tsim/universe.hpp"
#include "tsim/zone.hpp"

namespace tsim {

/// One linear inequality: sum of coef[i] * x_i, compared to rhs.
/// coef is indexed by universe variable; coef[0] is unused.
struct LinearAtom {
    std::vector<std::int64_t> coef;
    bool strict = false;
    std::int64_t rhs = 0;

    bool mentions(std::size_t var) const { return coef[var] != 0; }
    bool eval(const std::vector<Rational>& point) const;
    std::string to_string(const VarUniverse& u) const;
};

/// A conjunction of linear atoms over one universe.
struct LinearSystem {
    UniversePtr u;
    std::vector<LinearAtom> atoms;

    bool eval(const std::vector<Rational>& point) const;
    std::string to_string() const;
};

/// Existentially eliminate var from the conjunction. Clock variables carry
/// their implicit nonnegativity, which participates as a lower bound.
LinearSystem fm_eliminate_general(const LinearSystem& sys, std::size_t var);

/// Convert to a zone when every atom is difference-shaped; throws
/// std::invalid_argument otherwise.
Zone to_zone(const LinearSystem& sys);

/// Lift a zone's constraints into linear atoms.
LinearSystem from_zone(const Zone& z);

}  // namespace tsim
