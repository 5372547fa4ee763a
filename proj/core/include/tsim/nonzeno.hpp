// ============================================================================
// tsim/nonzeno.hpp — Reachability and time divergence
// ============================================================================
//
// A state is non-Zeno when some run from it lets time diverge. The set is
// computed as a greatest fixpoint over the forward-reachable state space:
// keep the states that can let at least one time unit pass (through any mix
// of delays and the automaton's own transitions) and land back in the kept
// set. States trapped by their invariant so that time can only converge
// drop out.
//
// The restricted check replaces the implementation's initial set and
// invariant with their non-Zeno parts, then runs the ordinary simulation
// check: the implementation no longer wins obligations it could only
// discharge by stopping the clock.
//
// ============================================================================

#pragma once

#include "tsim/context.hpp"
#include "tsim/simulation.hpp"
#include "tsim/symbolic_set.hpp"

namespace tsim {

/// Image of s under arbitrary nonnegative time passage with inv holding at
/// every instant on the way (including both endpoints).
SymbolicSet time_successors(const SymbolicSet& s, const SymbolicSet& inv);

/// States reachable from a.init by alternating time passage and discrete
/// steps, staying inside a.invariant throughout.
SymbolicSet forward_reach(const CompiledTea& a, std::int64_t max_const);

/// The reachable states from which time can still diverge.
SymbolicSet non_zeno_states(const CompiledTea& a, const UniversePtr& u,
                            std::int64_t max_const);

/// Single-automaton conveniences compiling a alone.
SymbolicSet forward_reach(const Tea& a);
SymbolicSet non_zeno_states(const Tea& a);

/// Simulation check with the implementation restricted to its non-Zeno
/// reachable states.
SimVerdict nz_simulation_check(const Tea& impl, const Tea& spec,
                               SimOptions opt = {});

/// The restriction set itself, over the joint universe of ctx.
SymbolicSet nz_restriction(const CheckContext& ctx);

}  // namespace tsim
