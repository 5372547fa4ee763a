// ============================================================================
// tsim/oracle.hpp — Brute-force ground truth at desk scale
// ============================================================================
//
// Independent answers to the two questions the symbolic engines decide,
// obtained by explicit game solving on the region quotient instead of zone
// fixpoints. Nothing here shares algorithmic structure with the engines:
// the simulation question is played as an actual delay/fire game region by
// region, and time divergence is found as a lasso through a "one full time
// unit passed" marker. Intended for cross-checking on small inputs only;
// strict size guards reject anything larger.
//
// The simulation game runs on joint regions over both automata's clocks
// plus an elapsed-time bookkeeping clock. For each candidate pair and each
// implementation move, the attacker ages the pair boundary by boundary,
// while the defender accumulates every position reachable through internal
// specification moves that stay inside the candidate relation; the move is
// answered if at the attack instant some accumulated position fires a
// compatible transition back into the relation. Once every clock has aged
// beyond the cap, further unit stretches repeat a finite pattern, so the
// game advances in rebased one-unit waves until the defender's wave set
// repeats.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <vector>

#include "tsim/model.hpp"
#include "tsim/rational.hpp"

namespace tsim {

struct OracleLimits {
    /// Interned regions across one oracle run.
    std::size_t max_regions = 200000;
    /// Total region-step work across one oracle run.
    std::size_t max_steps = 5000000;
    std::size_t max_clocks = 6;
    std::int64_t max_const = 20;
};

/// A joint state: proposition valuation and variable values laid out per
/// the universe of CheckContext::build(impl, spec).
struct ProbePair {
    std::vector<bool> props;
    std::vector<Rational> point;
};

struct OracleSimulation {
    /// Every initial implementation region has a partner in the maximal
    /// simulation relation.
    bool holds = false;
    std::size_t relation_regions = 0;
    /// Membership of each probe's region in the maximal relation.
    std::vector<bool> probe_in_relation;
};

OracleSimulation oracle_simulation(const Tea& impl, const Tea& spec,
                                   const std::vector<ProbePair>& probes = {},
                                   const OracleLimits& lim = {});

/// One reachable region of a, classified: from its states, can time still
/// diverge? Points are laid out per SingleContext::build(a).universe.
struct ZenoSample {
    std::vector<bool> props;
    std::vector<Rational> point;
    bool non_zeno = false;
};

std::vector<ZenoSample> oracle_zeno_regions(const Tea& a,
                                            const OracleLimits& lim = {});

}  // namespace tsim
