// ============================================================================
// tsim/model.hpp — Timed event-automata
// ============================================================================
//
// An automaton is a tuple of event alphabet, clocks, global and local
// propositions, an initial condition, a state invariant, and transitions.
// Each transition carries a label (a set of events, possibly empty), a guard,
// and a partial assignment that resets clocks to 0 and sets propositions.
// The null transition (empty label, guard true, no assignment) is implicitly
// present in every automaton; engines add it explicitly where it matters.
//
// ============================================================================

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsim/predicate.hpp"
#include "tsim/rational.hpp"

namespace tsim {

/// Clock resets (always to 0) and proposition writes; unlisted identifiers
/// stay unchanged.
struct PartialAssignment {
    std::set<std::string> clock_resets;
    std::map<std::string, bool> prop_sets;

    bool empty() const { return clock_resets.empty() && prop_sets.empty(); }

    /// Sequential composition: the right-hand assignment wins on overlap.
    PartialAssignment then(const PartialAssignment& later) const;

    bool operator==(const PartialAssignment& o) const = default;
};

struct Transition {
    std::set<std::string> label;
    PredPtr guard;
    PartialAssignment assign;
};

struct Tea {
    std::string name;
    std::set<std::string> events;
    std::set<std::string> clocks;
    std::set<std::string> globals;
    std::set<std::string> locals;
    PredPtr init;
    PredPtr invariant;
    std::vector<Transition> transitions;

    /// The implicit null transition.
    static Transition null_transition();

    /// Checks namespace disjointness and that every identifier used in
    /// predicates, labels, and assignments is declared. Throws
    /// std::invalid_argument with a description of the first violation.
    void validate() const;
};

bool tea_equal(const Tea& a, const Tea& b);

/// Total valuation of one automaton's propositions and clocks.
struct State {
    std::map<std::string, bool> props;
    std::map<std::string, Rational> clocks;

    State delayed(const Rational& d) const;
    State assigned(const PartialAssignment& a) const;
    bool satisfies(const PredPtr& p) const;
};

/// Labels equal as sets, and the two assignments agree on every global
/// proposition: both silent, or both writing the same value.
bool compatible(const Transition& e1, const Transition& e2,
                const std::set<std::string>& globals);

/// All transitions of spec whose label and global effect match e1. The null
/// transition is included when e1 itself is null-compatible (empty label, no
/// global writes).
std::vector<Transition> compatible_set(const Transition& e1, const Tea& spec);

/// One discrete step: guard, assignment, then the invariant on the result.
/// Empty when blocked.
std::optional<State> discrete_step(const State& s, const Transition& e,
                                   const Tea& a);

}  // namespace tsim
