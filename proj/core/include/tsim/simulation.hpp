// ============================================================================
// tsim/simulation.hpp — Symbolic simulation checking
// ============================================================================
//
// Decides whether every timed behaviour of the implementation automaton can
// be matched, stutter step by stutter step, by the specification automaton.
// The decision runs as a greatest fixpoint on a candidate relation Q over
// joint states: starting from "both invariants hold", each sweep removes the
// pairs where the implementation can delay and fire some transition that the
// specification cannot answer with internal stutter moves followed by a
// compatible transition. The procedure reports failure early when an initial
// implementation state loses all partners.
//
// The backward building blocks (single and joint transition preconditions,
// delay closure, stutter closure) are exposed for reuse by the emptiness
// and non-Zenoness analyses and for direct testing.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsim/context.hpp"
#include "tsim/symbolic_set.hpp"

namespace tsim {

// ── Backward operators ──────────────────────────────────────────────────

/// Sequential composition of two updates: resets accumulate, the second
/// writer of a proposition wins.
void composed_updates(const CompiledTransition& e1,
                      const CompiledTransition& e2,
                      std::vector<std::size_t>& resets,
                      std::vector<std::pair<std::size_t, bool>>& writes);

/// tau(e) ∧ weakest precondition of s under e's resets and writes.
SymbolicSet step_back(const CompiledTransition& e, const SymbolicSet& s);

/// Both guards ∧ weakest precondition of s under the composed update;
/// where both sides write the same proposition, e2 wins.
SymbolicSet joint_step_back(const CompiledTransition& e1,
                            const CompiledTransition& e2,
                            const SymbolicSet& s);

/// States that reach target by pure time passage, with guard holding at
/// every instant on the way (endpoints included).
SymbolicSet delay_back(const SymbolicSet& guard, const SymbolicSet& target);

/// States reachable from source by pure time passage, with guard holding
/// at every instant on the way (endpoints included).
SymbolicSet delay_forward(const SymbolicSet& guard, const SymbolicSet& source);

/// Least fixpoint of Y = seed ∪ delay_back(guard, ⋃_e step_back(e, Y)):
/// everything that reaches seed through any interleaving of time passage
/// (guard holding throughout) and the given discrete steps. Iterates are
/// widened to max_const each round to force termination.
SymbolicSet stutter_back(const SymbolicSet& guard, const SymbolicSet& seed,
                         const std::vector<const CompiledTransition*>& steps,
                         std::int64_t max_const);

// ── The check ───────────────────────────────────────────────────────────

struct SimOptions {
    /// Test the initial states after every sweep and stop at the first
    /// failure. When off, the fixpoint runs to convergence and the initial
    /// states are tested once at the end; the boolean verdict is the same.
    bool early_initial_check = true;

    /// Replacements for the implementation's compiled initial set and
    /// invariant (the non-Zenoness check restricts both).
    std::optional<SymbolicSet> init1_override;
    std::optional<SymbolicSet> inv1_override;

    /// Keep a copy of Q after every sweep (for descent diagnostics).
    bool record_iterates = false;

    /// Start the fixpoint from the joint reachable states instead of the
    /// full invariant product. The verdict is identical (matched plays
    /// never leave the reachable pairs), but the candidate relation stays
    /// drastically smaller on systems whose sides run in lockstep.
    bool restrict_to_reachable = true;
};

struct SimStats {
    std::size_t sweeps = 0;
    std::size_t relation_cells = 0;
    double seconds = 0.0;
};

struct SimVerdict {
    bool holds = false;
    /// Converged relation; populated when the fixpoint ran to convergence
    /// (always, unless the early initial check aborted a failing run).
    SymbolicSet relation;
    /// Initial implementation states with no specification partner;
    /// nonempty exactly when the check fails.
    SymbolicSet failing_initial;
    SimStats stats;
    std::vector<SymbolicSet> iterates;
};

class SimulationEngine {
public:
    explicit SimulationEngine(const CheckContext& ctx, SimOptions opt = {});

    SimVerdict run();

    // Per-transition pieces, exposed for inspection and tests; e1 indexes
    // ctx.a1.transitions (the null transition last).

    /// (state, delay) pairs: the implementation holds its invariant along
    /// the delay, then fires e1 and lands back inside it.
    const SymbolicSet& fire_window(std::size_t e1);

    /// (pair, delay) triples the specification answers: stutter inside q
    /// for exactly the delay, then fire some transition compatible with e1,
    /// landing in q.
    SymbolicSet match_window(std::size_t e1, const SymbolicSet& q) const;

    /// Pairs to delete from q: some delay makes e1 fireable but unmatched.
    /// Only obligations of pairs still in q are considered.
    SymbolicSet unanswered(std::size_t e1, const SymbolicSet& q);

    /// Joint states reachable from the paired initial states through shared
    /// delays, compatible transition pairs, and specification stutter
    /// steps, widened to max_const; every state a matched play can visit
    /// lies inside it.
    SymbolicSet joint_reach();

    const CheckContext& context() const { return ctx_; }

private:
    const CheckContext& ctx_;
    SimOptions opt_;
    SymbolicSet init1_, inv1_;
    std::vector<const CompiledTransition*> stutter_;
    std::vector<std::optional<SymbolicSet>> fire_windows_;

    /// Initial-state coverage: projects the specification's locals and
    /// clocks out of I1 ∧ I2 ∧ q and compares against I1.
    bool initial_states_covered(const SymbolicSet& q,
                                SymbolicSet* failing) const;
};

/// Convenience wrappers building the context internally.
SimVerdict simulation_check(const Tea& impl, const Tea& spec,
                            SimOptions opt = {});
std::pair<SimVerdict, SimVerdict> equivalence_check(const Tea& a,
                                                    const Tea& b,
                                                    SimOptions opt = {});

}  // namespace tsim
