#include "tsim/nonzeno.hpp"

namespace tsim {

SymbolicSet time_successors(const SymbolicSet& s, const SymbolicSet& inv) {
    const auto& u = s.universe_ptr();
    const std::size_t t = u->neg_t();
    return s.shifted(t)
        .intersect(inv.past_constraint(t))
        .eliminate({}, {t});
}

SymbolicSet forward_reach(const CompiledTea& a, std::int64_t max_const) {
    SymbolicSet reach =
        time_successors(a.init.intersect(a.invariant), a.invariant)
            .extrapolated(max_const);
    for (;;) {
        SymbolicSet next = reach;
        for (const auto& e : a.transitions) {
            if (e.is_null) continue;
            SymbolicSet post = reach.intersect(e.guard)
                                   .assign_image(e.resets, e.writes)
                                   .intersect(a.invariant);
            next.union_with(time_successors(post, a.invariant));
        }
        next = next.extrapolated(max_const);
        if (reach.includes(next)) return reach;
        reach = std::move(next);
    }
}

SymbolicSet non_zeno_states(const CompiledTea& a, const UniversePtr& u,
                            std::int64_t max_const) {
    const std::size_t z = u->aux_z();
    std::vector<const CompiledTransition*> steps;
    for (const auto& e : a.transitions) steps.push_back(&e);

    SymbolicSet y = forward_reach(a, max_const).intersect(a.invariant);
    for (;;) {
        // States that can let one full time unit pass (z counts elapsed
        // duration backwards from the z >= 1 seed) and land back in y.
        SymbolicSet seed = y.constrained(0, z, Bound::weak(-1));
        SymbolicSet pre = stutter_back(a.invariant, seed, steps, max_const)
                              .constrained(z, 0, Bound::zero())
                              .constrained(0, z, Bound::zero())
                              .eliminate({}, {z});
        SymbolicSet next = y.intersect(pre);
        if (next.includes(y)) return y;
        y = std::move(next);
    }
}

SymbolicSet forward_reach(const Tea& a) {
    SingleContext sc = SingleContext::build(a);
    return forward_reach(sc.tea, sc.max_const);
}

SymbolicSet non_zeno_states(const Tea& a) {
    SingleContext sc = SingleContext::build(a);
    return non_zeno_states(sc.tea, sc.universe, sc.max_const);
}

SymbolicSet nz_restriction(const CheckContext& ctx) {
    return non_zeno_states(ctx.a1, ctx.universe, ctx.max_const);
}

SimVerdict nz_simulation_check(const Tea& impl, const Tea& spec,
                               SimOptions opt) {
    CheckContext ctx = CheckContext::build(impl, spec);
    SymbolicSet nz = nz_restriction(ctx);
    opt.init1_override = ctx.a1.init.intersect(nz);
    opt.inv1_override = std::move(nz);
    return SimulationEngine(ctx, std::move(opt)).run();
}

}  // namespace tsim
