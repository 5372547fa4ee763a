// ============================================================================
// tsim/context.hpp — One refinement check's shared workspace
// ============================================================================
//
// Loads the implementation and the specification into a single variable
// universe: shared events and globals (must match), locals and clocks from
// both sides (specification names renamed on collision), and the combined
// maximal constant. Predicates, guards, and assignments are compiled to
// symbolic sets and index lists so the engines never touch names again.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsim/model.hpp"
#include "tsim/symbolic_set.hpp"

namespace tsim {

struct CompiledTransition {
    std::set<std::string> label;
    SymbolicSet guard;
    std::vector<std::size_t> resets;                   // clock var indices
    std::vector<std::pair<std::size_t, bool>> writes;  // prop index, value
    bool is_null = false;
};

struct CompiledTea {
    std::string name;
    SymbolicSet init;
    SymbolicSet invariant;
    /// All transitions, the null transition last.
    std::vector<CompiledTransition> transitions;
    std::vector<std::size_t> clock_vars;
    std::vector<std::size_t> local_props;
};

class CheckContext {
public:
    /// Validates both automata, checks that events and globals coincide,
    /// renames colliding specification locals and clocks, and compiles.
    /// Throws std::invalid_argument on mismatched alphabets.
    static CheckContext build(const Tea& impl, const Tea& spec);

    UniversePtr universe;
    std::int64_t max_const = 1;

    CompiledTea a1, a2;

    /// compat[i] lists the indices of a2.transitions compatible with
    /// a1.transitions[i]; the last row belongs to a1's null transition, so
    /// it is exactly the specification's internal stutter steps.
    std::vector<std::vector<std::size_t>> compat;

    const std::vector<std::size_t>& stutter_steps() const {
        return compat.back();
    }

    /// The specification after collision renaming (what a2 was compiled
    /// from); useful for diagnostics and for independent re-checks.
    Tea renamed_spec;
};

/// One automaton compiled alone, for the reachability and non-Zenoness
/// analyses that do not pair it with a partner.
struct SingleContext {
    UniversePtr universe;
    std::int64_t max_const = 1;
    CompiledTea tea;

    static SingleContext build(const Tea& a);
};

}  // namespace tsim
