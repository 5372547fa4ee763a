#include "tsim/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsim/context.hpp"
#include "tsim/region.hpp"
#include "tsim/simulation.hpp"

namespace tsim {

namespace {

void check_guards(const UniversePtr& u, std::int64_t max_const,
                  const OracleLimits& lim) {
    if (u->clock_count() > lim.max_clocks)
        throw std::runtime_error("oracle size guard: " +
                                 std::to_string(u->clock_count()) +
                                 " clocks exceed the limit of " +
                                 std::to_string(lim.max_clocks));
    if (max_const > lim.max_const)
        throw std::runtime_error("oracle size guard: maximal constant " +
                                 std::to_string(max_const) +
                                 " exceeds the limit of " +
                                 std::to_string(lim.max_const));
}

/// Pin the displacement variables and the auxiliary clock to zero so that
/// region enumeration over a set stays finite.
SymbolicSet pin_aux(const SymbolicSet& s) {
    const auto& u = s.universe_ptr();
    SymbolicSet r = s;
    for (std::size_t v :
         {u->neg_delta(), u->neg_t(), u->neg_t2(), u->aux_z()})
        r = r.constrained(v, 0, Bound::zero()).constrained(0, v, Bound::zero());
    return r;
}

// ── The simulation game ─────────────────────────────────────────────────
//
// Joint regions carry both sides' clocks plus the elapsed-time variable z.
// An obligation (r, e1) is decided by aging a ghost copy of the pair span
// by span (a span is one class of the implementation-plus-z projection,
// the part of the state the attacker pins down). Alongside the ghost, the
// defender's set of positions grows by internal specification moves and
// shrinks to whatever stays inside the candidate relation. The attack
// succeeds if at some span e1 is enabled, lands inside the implementation
// invariant, and no accumulated defender position answers it.

class SimGame {
public:
    SimGame(const Tea& impl, const Tea& spec, const OracleLimits& lim)
        : ctx_(CheckContext::build(impl, spec)),
          lim_(lim),
          space_(ctx_.universe, ctx_.max_const),
          z_(ctx_.universe->aux_z()),
          h12_(ctx_.a1.invariant.intersect(ctx_.a2.invariant)) {
        check_guards(ctx_.universe, ctx_.max_const, lim_);
        skel_vars_ = ctx_.a1.clock_vars;
        skel_vars_.push_back(z_);
        std::vector<char> local(ctx_.universe->prop_count(), 0);
        for (auto k : ctx_.a1.local_props) local[k] = 1;
        for (auto k : ctx_.a2.local_props) local[k] = 1;
        for (std::size_t k = 0; k < local.size(); ++k)
            if (!local[k]) skel_props_.push_back(k);
        for (auto k : ctx_.a1.local_props) skel_props_.push_back(k);
    }

    OracleSimulation solve(const std::vector<ProbePair>& probes) {
        std::vector<std::size_t> seeds = regions_of(
            space_, pin_aux(ctx_.a1.init.intersect(ctx_.a2.init)),
            lim_.max_regions);
        std::vector<std::size_t> probe_ids;
        for (const auto& p : probes) {
            std::vector<Rational> pt = p.point;
            for (std::size_t v : {ctx_.universe->neg_delta(),
                                  ctx_.universe->neg_t(),
                                  ctx_.universe->neg_t2(), z_})
                pt[v] = Rational(0);
            probe_ids.push_back(space_.of_point(p.props, pt));
        }

        build_universe(seeds, probe_ids);

        in_q_.assign(space_.size(), 0);
        for (auto id : uni_)
            in_q_[id] = space_.satisfies(id, h12_) ? 1 : 0;

        for (bool changed = true; changed;) {
            changed = false;
            for (auto id : uni_) {
                if (!in_q_[id]) continue;
                for (std::size_t i = 0; i < ctx_.a1.transitions.size(); ++i) {
                    if (attack_wins(id, i)) {
                        in_q_[id] = 0;
                        changed = true;
                        break;
                    }
                }
            }
        }

        OracleSimulation out;
        for (auto id : uni_)
            if (in_q_[id]) ++out.relation_regions;
        for (auto id : probe_ids)
            out.probe_in_relation.push_back(in_q_[id] != 0);
        out.holds = initial_covered(seeds);
        return out;
    }

private:
    void bump() {
        if (++work_ > lim_.max_steps)
            throw std::runtime_error("oracle size guard: step limit exceeded");
        if (space_.size() > lim_.max_regions)
            throw std::runtime_error(
                "oracle size guard: region limit exceeded");
    }

    bool in_q(std::size_t id) const {
        return id < in_q_.size() && in_q_[id] != 0;
    }

    /// Relation membership of a position, elapsed time dropped.
    bool q_member(std::size_t id) {
        return in_q(space_.with_var_zeroed(id, z_));
    }

    bool same_span(std::size_t a, std::size_t b) const {
        return space_.same_projection(a, b, skel_vars_, skel_props_);
    }

    /// Forward closure of everything the relation can mention: time
    /// passage (elapsed variable pinned), internal specification moves,
    /// and compatible joint fires.
    void build_universe(const std::vector<std::size_t>& seeds,
                        const std::vector<std::size_t>& probe_ids) {
        auto add = [&](std::size_t id) {
            if (id >= in_uni_.size()) in_uni_.resize(space_.size(), 0);
            if (!in_uni_[id]) {
                in_uni_[id] = 1;
                uni_.push_back(id);
            }
        };
        for (auto id : seeds) add(id);
        for (auto id : probe_ids) add(id);
        for (std::size_t w = 0; w < uni_.size(); ++w) {
            const std::size_t id = uni_[w];
            bump();
            add(space_.time_successor_frozen(id, z_));
            for (auto j : ctx_.stutter_steps()) {
                const auto& e2 = ctx_.a2.transitions[j];
                if (e2.is_null) continue;
                if (space_.satisfies(id, e2.guard))
                    add(space_.updated(id, e2.resets, e2.writes));
            }
            for (std::size_t i = 0; i + 1 < ctx_.a1.transitions.size(); ++i) {
                const auto& e1 = ctx_.a1.transitions[i];
                if (!space_.satisfies(id, e1.guard)) continue;
                for (auto j : ctx_.compat[i]) {
                    const auto& e2 = ctx_.a2.transitions[j];
                    if (!space_.satisfies(id, e2.guard)) continue;
                    std::vector<std::size_t> resets;
                    std::vector<std::pair<std::size_t, bool>> writes;
                    composed_updates(e1, e2, resets, writes);
                    add(space_.updated(id, resets, writes));
                }
            }
        }
    }

    /// In-span closure: grow s by internal specification moves and by
    /// aging steps that stay in the ghost's span, filtering everything
    /// through the relation; aging steps that leave the span are collected
    /// (already filtered) as the next span's starting positions.
    void expand(const std::vector<std::size_t>& s, std::size_t g,
                std::vector<std::size_t>& closure,
                std::vector<std::size_t>& crossings) {
        std::set<std::size_t> seen(s.begin(), s.end());
        std::set<std::size_t> crossed;
        std::vector<std::size_t> work(s.begin(), s.end());
        while (!work.empty()) {
            bump();
            const std::size_t u = work.back();
            work.pop_back();
            for (auto j : ctx_.stutter_steps()) {
                const auto& e2 = ctx_.a2.transitions[j];
                if (e2.is_null) continue;
                if (!space_.satisfies(u, e2.guard)) continue;
                const std::size_t v = space_.updated(u, e2.resets, e2.writes);
                if (q_member(v) && seen.insert(v).second) work.push_back(v);
            }
            const std::size_t v = space_.time_successor(u);
            if (v == u) continue;
            if (same_span(v, g)) {
                if (q_member(v) && seen.insert(v).second) work.push_back(v);
            } else if (q_member(v)) {
                crossed.insert(v);
            }
        }
        closure.assign(seen.begin(), seen.end());
        crossings.assign(crossed.begin(), crossed.end());
    }

    /// Can e1 fire from the ghost's span into the implementation
    /// invariant?
    bool fires(std::size_t g, const CompiledTransition& e1) {
        if (!space_.satisfies(g, e1.guard)) return false;
        return space_.satisfies(space_.updated(g, e1.resets, e1.writes),
                                ctx_.a1.invariant);
    }

    /// Does some accumulated position answer e1 with a compatible
    /// transition landing in the relation?
    bool defended(const std::vector<std::size_t>& closure, std::size_t i) {
        const auto& e1 = ctx_.a1.transitions[i];
        for (auto u : closure) {
            for (auto j : ctx_.compat[i]) {
                bump();
                const auto& e2 = ctx_.a2.transitions[j];
                if (!space_.satisfies(u, e2.guard)) continue;
                std::vector<std::size_t> resets;
                std::vector<std::pair<std::size_t, bool>> writes;
                composed_updates(e1, e2, resets, writes);
                if (q_member(space_.updated(u, resets, writes))) return true;
            }
        }
        return false;
    }

    bool attack_wins(std::size_t r, std::size_t i) {
        const auto& e1 = ctx_.a1.transitions[i];
        std::size_t g = r;
        std::vector<std::size_t> s{r};
        for (;;) {
            if (space_.representative(g)[z_] >= Rational(space_.cap()))
                return tail_wins(g, s, i);
            std::vector<std::size_t> closure, crossings;
            expand(s, g, closure, crossings);
            if (fires(g, e1) && !defended(closure, i)) return true;
            std::size_t gn = g;
            do {
                bump();
                gn = space_.time_successor(gn);
            } while (same_span(gn, g));
            if (!space_.satisfies(gn, ctx_.a1.invariant)) return false;
            g = gn;
            s = std::move(crossings);
        }
    }

    /// Every clock and the elapsed variable have aged beyond the cap: the
    /// attacker's side is frozen, so attack capability is constant, and
    /// the defender's remaining evolution repeats with period structure.
    /// Walk rebased one-unit waves until the wave set repeats.
    bool tail_wins(std::size_t g, const std::vector<std::size_t>& s,
                   std::size_t i) {
        const auto& e1 = ctx_.a1.transitions[i];
        const std::size_t g0 = space_.with_var_zeroed(g, z_);
        if (!fires(g0, e1)) return false;
        std::vector<std::size_t> wave;
        for (auto u : s) wave.push_back(space_.with_var_zeroed(u, z_));
        std::sort(wave.begin(), wave.end());
        wave.erase(std::unique(wave.begin(), wave.end()), wave.end());
        std::set<std::vector<std::size_t>> seen_waves;
        for (;;) {
            bump();
            if (!seen_waves.insert(wave).second) return false;
            std::size_t gm = g0;
            std::vector<std::size_t> sm = wave;
            for (;;) {
                std::vector<std::size_t> closure, crossings;
                expand(sm, gm, closure, crossings);
                if (!defended(closure, i)) return true;
                if (space_.representative(gm)[z_] == Rational(1)) {
                    std::vector<std::size_t> next;
                    for (auto u : closure)
                        next.push_back(space_.with_var_zeroed(u, z_));
                    std::sort(next.begin(), next.end());
                    next.erase(std::unique(next.begin(), next.end()),
                               next.end());
                    wave = std::move(next);
                    break;
                }
                std::size_t gn = gm;
                do {
                    bump();
                    gn = space_.time_successor(gn);
                } while (same_span(gn, gm));
                gm = gn;
                sm = std::move(crossings);
            }
        }
    }

    /// Statement-level verdict: every region of the implementation's
    /// initial set must find some initial pair region in the relation with
    /// the same implementation part.
    bool initial_covered(const std::vector<std::size_t>& init_pairs) {
        SymbolicSet impl_init = pin_aux(ctx_.a1.init);
        for (auto c : ctx_.a2.clock_vars)
            impl_init = impl_init.constrained(c, 0, Bound::zero())
                            .constrained(0, c, Bound::zero());
        Cube pin(ctx_.universe);
        for (auto k : ctx_.a2.local_props) pin.set(k, false);
        impl_init = impl_init.intersect(
            SymbolicSet::of_cell({pin, Zone::universe(ctx_.universe)}));
        for (auto a :
             regions_of(space_, impl_init, lim_.max_regions)) {
            bool covered = false;
            for (auto b : init_pairs) {
                if (in_q(b) && space_.same_projection(a, b, ctx_.a1.clock_vars,
                                                      skel_props_)) {
                    covered = true;
                    break;
                }
            }
            if (!covered) return false;
        }
        return true;
    }

    CheckContext ctx_;
    OracleLimits lim_;
    RegionSpace space_;
    std::size_t z_;
    SymbolicSet h12_;
    std::vector<std::size_t> skel_vars_;
    std::vector<std::size_t> skel_props_;
    std::vector<std::size_t> uni_;
    std::vector<char> in_uni_;
    std::vector<char> in_q_;
    std::size_t work_ = 0;
};

}  // namespace

OracleSimulation oracle_simulation(const Tea& impl, const Tea& spec,
                                   const std::vector<ProbePair>& probes,
                                   const OracleLimits& lim) {
    SimGame game(impl, spec, lim);
    return game.solve(probes);
}

// ── Time divergence ─────────────────────────────────────────────────────
//
// Augment the reachable region graph with a bookkeeping clock that is
// reset whenever it reaches one: such a reset edge witnesses one full time
// unit. Time can diverge from a region exactly when some cycle containing
// a reset edge is reachable, all within the invariant.

std::vector<ZenoSample> oracle_zeno_regions(const Tea& a,
                                            const OracleLimits& lim) {
    SingleContext sc = SingleContext::build(a);
    check_guards(sc.universe, sc.max_const, lim);
    RegionSpace space(sc.universe, sc.max_const);
    const std::size_t z = sc.universe->aux_z();
    const SymbolicSet& h = sc.tea.invariant;
    std::size_t work = 0;
    auto bump = [&] {
        if (++work > lim.max_steps)
            throw std::runtime_error("oracle size guard: step limit exceeded");
        if (space.size() > lim.max_regions)
            throw std::runtime_error(
                "oracle size guard: region limit exceeded");
    };

    std::vector<std::size_t> nodes;
    std::vector<char> seen;
    auto add = [&](std::size_t id) {
        if (id >= seen.size()) seen.resize(space.size(), 0);
        if (!seen[id]) {
            seen[id] = 1;
            nodes.push_back(id);
        }
    };
    for (auto id :
         regions_of(space, pin_aux(sc.tea.init.intersect(h)), lim.max_regions))
        add(id);

    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, bool>>>
        succ;  // node -> (target, counts one unit)
    for (std::size_t w = 0; w < nodes.size(); ++w) {
        const std::size_t u = nodes[w];
        bump();
        auto& edges = succ[u];
        if (space.representative(u)[z] == Rational(1)) {
            edges.emplace_back(space.with_var_zeroed(u, z), true);
        } else {
            const std::size_t v = space.time_successor(u);
            if (v != u && space.satisfies(v, h)) edges.emplace_back(v, false);
            for (const auto& e : sc.tea.transitions) {
                if (e.is_null) continue;
                if (!space.satisfies(u, e.guard)) continue;
                const std::size_t p = space.updated(u, e.resets, e.writes);
                if (space.satisfies(p, h)) edges.emplace_back(p, false);
            }
        }
        for (const auto& [v, unit] : edges) add(v);
    }

    // Strongly connected components, iteratively.
    std::unordered_map<std::size_t, std::size_t> comp, order, low;
    std::vector<std::size_t> stack;
    std::vector<char> on_stack_flag;
    auto on_stack = [&](std::size_t id) {
        return id < on_stack_flag.size() && on_stack_flag[id] != 0;
    };
    std::size_t next_order = 0, next_comp = 0;
    for (auto root : nodes) {
        if (order.count(root)) continue;
        std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
        while (!call.empty()) {
            auto& [u, k] = call.back();
            if (k == 0) {
                order[u] = low[u] = next_order++;
                stack.push_back(u);
                if (u >= on_stack_flag.size()) on_stack_flag.resize(u + 1, 0);
                on_stack_flag[u] = 1;
            }
            const auto& edges = succ[u];
            if (k < edges.size()) {
                const std::size_t v = edges[k].first;
                ++k;
                if (!order.count(v)) {
                    call.emplace_back(v, 0);
                } else if (on_stack(v)) {
                    low[u] = std::min(low[u], order[v]);
                }
            } else {
                if (low[u] == order[u]) {
                    for (;;) {
                        const std::size_t v = stack.back();
                        stack.pop_back();
                        on_stack_flag[v] = 0;
                        comp[v] = next_comp;
                        if (v == u) break;
                    }
                    ++next_comp;
                }
                const std::size_t done = u;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] =
                        std::min(low[call.back().first], low[done]);
            }
        }
    }

    // Components containing a unit edge admit divergence; so does
    // everything that reaches them.
    std::vector<char> good(next_comp, 0);
    for (const auto& [u, edges] : succ)
        for (const auto& [v, unit] : edges)
            if (unit && comp[u] == comp[v]) good[comp[u]] = 1;

    std::unordered_map<std::size_t, std::vector<std::size_t>> rev;
    std::vector<std::size_t> queue;
    std::set<std::size_t> diverges;
    for (const auto& [u, edges] : succ)
        for (const auto& [v, unit] : edges) rev[v].push_back(u);
    for (auto u : nodes)
        if (good[comp[u]]) {
            diverges.insert(u);
            queue.push_back(u);
        }
    while (!queue.empty()) {
        const std::size_t v = queue.back();
        queue.pop_back();
        for (auto u : rev[v])
            if (diverges.insert(u).second) queue.push_back(u);
    }

    std::vector<ZenoSample> out;
    out.reserve(nodes.size());
    for (auto u : nodes)
        out.push_back({space.at(u).props, space.representative(u),
                       diverges.count(u) != 0});
    return out;
}

}  // namespace tsim
