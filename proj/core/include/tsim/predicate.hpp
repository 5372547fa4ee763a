// ============================================================================
// tsim/predicate.hpp — State predicates
// ============================================================================
//
// Boolean combinations of proposition literals and clock atoms
//
//     x ~ c        x - y ~ c        ~ in { <, <=, =, >=, > }
//
// with integer constants. These are the surface-level conditions of a model
// (initial condition, invariant, guards); compile() turns one into a
// SymbolicSet over a check's universe.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>

#include "tsim/rational.hpp"
#include "tsim/symbolic_set.hpp"

namespace tsim {

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

struct Pred {
    enum class Kind { True, False, Prop, Atom, Not, And, Or };

    Kind kind = Kind::True;

    // Kind::Prop
    std::string prop;

    // Kind::Atom: lhs [- rhs_var] op constant
    std::string lhs;
    std::string rhs_var;  // empty for single-clock atoms
    CmpOp op = CmpOp::Le;
    std::int64_t constant = 0;

    // Kind::Not uses a; Kind::And / Kind::Or use a and b.
    PredPtr a, b;

    static PredPtr mk_true();
    static PredPtr mk_false();
    static PredPtr mk_prop(std::string name);
    static PredPtr mk_atom(std::string x, CmpOp op, std::int64_t c);
    static PredPtr mk_diff(std::string x, std::string y, CmpOp op,
                           std::int64_t c);
    static PredPtr mk_not(PredPtr p);
    static PredPtr mk_and(PredPtr a, PredPtr b);
    static PredPtr mk_or(PredPtr a, PredPtr b);
};

/// Compile into the exact set of satisfying states. Negation is pushed to
/// the atoms, so no set-level complement is taken.
SymbolicSet compile(const PredPtr& p, const UniversePtr& u);

/// Largest absolute constant appearing in any atom.
std::int64_t max_constant(const PredPtr& p);

/// Evaluate at a concrete state given by lookup functions.
bool eval(const PredPtr& p,
          const std::function<bool(const std::string&)>& prop_val,
          const std::function<Rational(const std::string&)>& clock_val);

/// Collect the identifiers used, split by syntactic role.
void collect_names(const PredPtr& p, std::set<std::string>& props,
                   std::set<std::string>& clocks);

/// Structural equality.
bool equal(const PredPtr& a, const PredPtr& b);

/// Rename clocks and propositions (identity for names not in the maps).
PredPtr rename(const PredPtr& p,
               const std::map<std::string, std::string>& clock_map,
               const std::map<std::string, std::string>& prop_map);

/// Multiply every constant by the rational factor; throws
/// std::invalid_argument when some scaled constant is not an integer.
PredPtr scale(const PredPtr& p, const Rational& factor);

/// Render in the surface syntax (&&, ||, !, parentheses).
std::string to_string(const PredPtr& p);

}  // namespace tsim
