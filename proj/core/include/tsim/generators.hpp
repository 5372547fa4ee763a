// ============================================================================
// tsim/generators.hpp — Benchmark families
// ============================================================================
//
// Reconstructions of three classic timed protocols, each emitted as an
// implementation/specification pair that differs in exactly one process:
//
//   fischer_pair    m-process Fischer mutual exclusion with a shared lock
//                   variable and timing constants ttA (write deadline) and
//                   ttB (wait delay)
//   csma_pair       CSMA/CD with one bus and m senders, collision and retry,
//                   constants 26 (propagation), 52, and 104 (transmission)
//   prodcons_pair   one producer writing a shared buffer that m consumers
//                   periodically wipe, largest constant 15 or 20
//
// All m processes are composed into a single automaton at generation time;
// process state is a block of one-hot local propositions and shared state
// lives in global propositions.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <cstddef>

#include "tsim/model.hpp"

namespace tsim {

struct TeaPair {
    Tea impl;
    Tea spec;
};

/// `Ok` widens the first process's entry guard on the specification side, so
/// refinement holds; `Broken` offsets it past the implementation's.
enum class FischerVariant { Ok, Broken };

/// `Sim` tightens the implementation's first retry deadline against a laxer
/// specification; `None` additionally caps the specification's transmission
/// deadline below the implementation's, so the first completed transmission
/// has no match; `NzOnly` is `Sim` plus a time-stopping trap mode in the
/// implementation, reachable by a transition the specification cannot match,
/// so that only the non-Zeno check succeeds.
enum class CsmaVariant { Sim, NzOnly, None };

/// `Sim` keeps both write deadlines at 15 with a wider specification guard;
/// `None` lets the implementation delay its write up to 20 while the
/// specification still caps at 15.
enum class ProdConsVariant { Sim, None };

TeaPair fischer_pair(std::size_t m, std::int64_t tt_a = 10,
                     std::int64_t tt_b = 19,
                     FischerVariant variant = FischerVariant::Ok);

TeaPair csma_pair(std::size_t m, CsmaVariant variant = CsmaVariant::Sim);

TeaPair prodcons_pair(std::size_t m,
                      ProdConsVariant variant = ProdConsVariant::Sim);

/// Scale every timing constant in both automata by num/den, then clear
/// denominators jointly (one common factor for the pair) so that all
/// constants stay integral. The boolean verdict of a check is invariant
/// under uniform scaling.
TeaPair scaled_pair(const TeaPair& p, std::int64_t num, std::int64_t den);

}  // namespace tsim
