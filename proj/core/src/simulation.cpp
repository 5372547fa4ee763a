#include "tsim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <utility>

namespace tsim {

// ── Backward operators ──────────────────────────────────────────────────

SymbolicSet step_back(const CompiledTransition& e, const SymbolicSet& s) {
    return e.guard.intersect(s.assign_precondition(e.resets, e.writes));
}

void composed_updates(const CompiledTransition& e1,
                      const CompiledTransition& e2,
                      std::vector<std::size_t>& resets,
                      std::vector<std::pair<std::size_t, bool>>& writes) {
    resets = e1.resets;
    for (auto r : e2.resets)
        if (std::find(resets.begin(), resets.end(), r) == resets.end())
            resets.push_back(r);
    std::sort(resets.begin(), resets.end());
    std::map<std::size_t, bool> w;
    for (auto [k, v] : e1.writes) w.insert_or_assign(k, v);
    for (auto [k, v] : e2.writes) w.insert_or_assign(k, v);
    writes.assign(w.begin(), w.end());
}

SymbolicSet joint_step_back(const CompiledTransition& e1,
                            const CompiledTransition& e2,
                            const SymbolicSet& s) {
    std::vector<std::size_t> resets;
    std::vector<std::pair<std::size_t, bool>> writes;
    composed_updates(e1, e2, resets, writes);
    return e1.guard.intersect(
        e2.guard.intersect(s.assign_precondition(resets, writes)));
}

namespace {

// A delay segment within a union of convex cells splits into pieces that
// each stay inside one cell's time closure, with every split point landing
// in some cell. Chaining per-cell segment predecessors (or successors) to a
// fixpoint therefore gives exactly the states connected to the seed by one
// delay without leaving the guard, and avoids complementing the guard,
// which is ruinous on large sets.
SymbolicSet delay_closure(const SymbolicSet& guard, const SymbolicSet& seed,
                          bool forward) {
    const auto& u = seed.universe_ptr();
    const std::size_t t = u->neg_t();

    std::vector<std::pair<const Cell*, Zone>> tubes;
    tubes.reserve(guard.cells().size());
    for (const auto& g : guard.cells())
        tubes.emplace_back(&g, g.zone.time_closure());

    SymbolicSet y = guard.intersect(seed);
    SymbolicSet frontier = y;
    while (!frontier.is_empty()) {
        // Pieces inside their own guard cell are kept directly; the sliver a
        // piece covers on the relaxed boundary is valid only where some
        // other guard cell contains it, so those go through one membership
        // intersection at the end of the round.
        std::vector<Cell> raw;
        std::vector<Cell> slivers;
        for (const auto& [g, tube] : tubes) {
            for (const auto& c : frontier.cells()) {
                if (!g->cube.intersects(c.cube)) continue;
                Cube cb = g->cube;
                cb.intersect_with(c.cube);
                Zone z = c.zone.intersected(tube);
                if (z.is_empty()) continue;
                z.shift_vars(t);
                z.intersect_with(tube);
                if (forward)
                    z.constrain(0, t, Bound::zero());
                else
                    z.constrain(t, 0, Bound::zero());
                if (z.is_empty()) continue;
                z.free_var(t);

                Zone inside = z.intersected(g->zone);
                bool shrank = false;
                if (inside.is_empty()) {
                    shrank = true;
                } else {
                    Cell piece{cb, std::move(inside)};
                    shrank = !z.subset_of(piece.zone);
                    raw.push_back(std::move(piece));
                }
                if (shrank) slivers.push_back({std::move(cb), std::move(z)});
            }
        }
        SymbolicSet add = SymbolicSet::of_cells(u, std::move(raw));
        if (!slivers.empty())
            add.union_with(SymbolicSet::of_cells(u, std::move(slivers))
                               .intersect(guard));
        if (getenv("TSIM_DEBUG"))
            fprintf(stderr, "      db: y=%zu add=%zu\n", y.cell_count(),
                    add.cell_count());
        if (y.includes(add)) break;
        y.union_with(add);
        frontier = std::move(add);
    }
    return y;
}

}  // namespace

SymbolicSet delay_back(const SymbolicSet& guard, const SymbolicSet& target) {
    return delay_closure(guard, target, false);
}

SymbolicSet delay_forward(const SymbolicSet& guard, const SymbolicSet& source) {
    return delay_closure(guard, source, true);
}

SymbolicSet stutter_back(const SymbolicSet& guard, const SymbolicSet& seed,
                         const std::vector<const CompiledTransition*>& steps,
                         std::int64_t max_const) {
    // With no internal specification transitions the closure is a single
    // delay predecessor: the null step adds nothing a delay does not.
    if (steps.size() == 1 && steps.front()->is_null)
        return delay_back(guard, seed).extrapolated(max_const);

    SymbolicSet y = seed;
    for (;;) {
        SymbolicSet fired = SymbolicSet::bottom(y.universe_ptr());
        for (const auto* e : steps) fired.union_with(step_back(*e, y));
        if (getenv("TSIM_DEBUG"))
            fprintf(stderr, "  sb: y=%zu fired=%zu\n", y.cell_count(),
                    fired.cell_count());
        SymbolicSet next = y;
        next.union_with(delay_back(guard, fired));
        if (getenv("TSIM_DEBUG"))
            fprintf(stderr, "  sb: next=%zu\n", next.cell_count());
        next = next.extrapolated(max_const);
        if (y.includes(next)) return y;
        y = std::move(next);
    }
}

// ── Engine ──────────────────────────────────────────────────────────────

SimulationEngine::SimulationEngine(const CheckContext& ctx, SimOptions opt)
    : ctx_(ctx),
      opt_(std::move(opt)),
      init1_(opt_.init1_override ? *opt_.init1_override : ctx.a1.init),
      inv1_(opt_.inv1_override ? *opt_.inv1_override : ctx.a1.invariant) {
    for (auto j : ctx_.stutter_steps())
        stutter_.push_back(&ctx_.a2.transitions[j]);
    fire_windows_.resize(ctx_.a1.transitions.size());
}

const SymbolicSet& SimulationEngine::fire_window(std::size_t e1) {
    auto& slot = fire_windows_[e1];
    if (!slot) {
        const std::size_t d = ctx_.universe->neg_delta();
        slot = step_back(ctx_.a1.transitions[e1], inv1_)
                   .shifted(d)
                   .intersect(inv1_.path_constraint(d));
    }
    return *slot;
}

SymbolicSet SimulationEngine::match_window(std::size_t e1,
                                           const SymbolicSet& q) const {
    const std::size_t z = ctx_.universe->aux_z();
    SymbolicSet seed = SymbolicSet::bottom(ctx_.universe);
    for (auto j : ctx_.compat[e1])
        seed.union_with(
            joint_step_back(ctx_.a1.transitions[e1], ctx_.a2.transitions[j], q));
    seed = seed.constrained(z, 0, Bound::zero()).constrained(0, z, Bound::zero());
    return stutter_back(q, seed, stutter_, ctx_.max_const).replace_z();
}

SymbolicSet SimulationEngine::unanswered(std::size_t e1, const SymbolicSet& q) {
    // Restricting the fire window to q changes nothing about which members
    // of q get deleted, but keeps the difference small once q has shrunk
    // well below the invariant product.
    const std::size_t d = ctx_.universe->neg_delta();
    return fire_window(e1)
        .intersect(q)
        .difference(match_window(e1, q))
        .constrained(d, 0, Bound::zero())
        .eliminate({}, {d});
}

SymbolicSet SimulationEngine::joint_reach() {
    const SymbolicSet inv = inv1_.intersect(ctx_.a2.invariant);
    SymbolicSet r = init1_.intersect(ctx_.a2.init)
                        .intersect(inv)
                        .extrapolated(ctx_.max_const);
    std::vector<std::size_t> resets;
    std::vector<std::pair<std::size_t, bool>> writes;
    SymbolicSet frontier = r;
    while (!frontier.is_empty()) {
        SymbolicSet step = delay_forward(inv, frontier);
        for (std::size_t i = 0; i < ctx_.a1.transitions.size(); ++i) {
            const auto& e1 = ctx_.a1.transitions[i];
            for (auto j : ctx_.compat[i]) {
                const auto& e2 = ctx_.a2.transitions[j];
                if (e1.is_null && e2.is_null) continue;
                composed_updates(e1, e2, resets, writes);
                step.union_with(frontier.intersect(e1.guard)
                                    .intersect(e2.guard)
                                    .assign_image(resets, writes)
                                    .intersect(inv));
            }
        }
        step = step.extrapolated(ctx_.max_const);
        SymbolicSet add = step.difference(r);
        if (getenv("TSIM_DEBUG"))
            fprintf(stderr, "reach: r=%zu add=%zu\n", r.cell_count(),
                    add.cell_count());
        if (add.is_empty()) break;
        r.union_with(add);
        frontier = std::move(add);
    }
    return r;
}

bool SimulationEngine::initial_states_covered(const SymbolicSet& q,
                                              SymbolicSet* failing) const {
    SymbolicSet proj = init1_.intersect(ctx_.a2.init)
                           .intersect(q)
                           .eliminate(ctx_.a2.local_props, ctx_.a2.clock_vars);
    if (proj.includes(init1_)) return true;
    if (failing) *failing = init1_.difference(proj);
    return false;
}

SimVerdict SimulationEngine::run() {
    const auto started = std::chrono::steady_clock::now();
    auto finish = [&](SimVerdict v) {
        v.stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          started)
                .count();
        return v;
    };

    SimVerdict verdict{.holds = false,
                       .relation = SymbolicSet::bottom(ctx_.universe),
                       .failing_initial = SymbolicSet::bottom(ctx_.universe),
                       .stats = {},
                       .iterates = {}};

    // Starting from an extrapolated set keeps every later iterate inside
    // its predecessor: each is extrapolate(subset of an extrapolation-fixed
    // set). The version stamp lets a converged transition skip its
    // obligation check until q actually changes again.
    SymbolicSet q =
        inv1_.intersect(ctx_.a2.invariant).extrapolated(ctx_.max_const);
    if (opt_.restrict_to_reachable)
        q = q.intersect(joint_reach()).extrapolated(ctx_.max_const);
    std::size_t version = 0;
    std::vector<std::size_t> answered(ctx_.a1.transitions.size(), SIZE_MAX);
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < ctx_.a1.transitions.size(); ++i) {
            if (answered[i] == version) continue;
            if (getenv("TSIM_DEBUG"))
                fprintf(stderr, "sweep %zu e1=%zu: q=%zu cells\n",
                        verdict.stats.sweeps, i, q.cell_count());
            SymbolicSet gone = unanswered(i, q);
            if (gone.is_empty()) {
                answered[i] = version;
                continue;
            }
            SymbolicSet next = q.difference(gone).extrapolated(ctx_.max_const);
            if (next.includes(q)) {
                // Extrapolation undid the removal: this obligation cannot
                // shrink q any further.
                answered[i] = version;
                continue;
            }
            q = std::move(next);
            ++version;
            changed = true;
        }
        ++verdict.stats.sweeps;
        if (opt_.record_iterates) verdict.iterates.push_back(q);
        if (opt_.early_initial_check &&
            !initial_states_covered(q, &verdict.failing_initial))
            return finish(std::move(verdict));
        if (!changed) break;
    }

    verdict.holds = initial_states_covered(q, &verdict.failing_initial);
    verdict.relation = std::move(q);
    verdict.stats.relation_cells = verdict.relation.cell_count();
    return finish(std::move(verdict));
}

// ── Wrappers ────────────────────────────────────────────────────────────

SimVerdict simulation_check(const Tea& impl, const Tea& spec, SimOptions opt) {
    CheckContext ctx = CheckContext::build(impl, spec);
    return SimulationEngine(ctx, std::move(opt)).run();
}

std::pair<SimVerdict, SimVerdict> equivalence_check(const Tea& a, const Tea& b,
                                                    SimOptions opt) {
    return {simulation_check(a, b, opt), simulation_check(b, a, opt)};
}

}  // namespace tsim
