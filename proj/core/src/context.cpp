#include "tsim/context.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tsim/predicate.hpp"

namespace tsim {

namespace {

Tea rename_collisions(const Tea& impl, const Tea& spec) {
    std::set<std::string> taken;
    for (const auto& s : impl.clocks) taken.insert(s);
    for (const auto& s : impl.locals) taken.insert(s);
    for (const auto& s : impl.globals) taken.insert(s);
    for (const auto& s : spec.clocks) taken.insert(s);
    for (const auto& s : spec.locals) taken.insert(s);

    auto fresh = [&taken](const std::string& name) {
        std::string candidate = name;
        do {
            candidate += "_2";
        } while (taken.count(candidate));
        taken.insert(candidate);
        return candidate;
    };

    std::map<std::string, std::string> clock_map, prop_map;
    for (const auto& x : spec.clocks) {
        if (impl.clocks.count(x) || impl.locals.count(x))
            clock_map[x] = fresh(x);
    }
    for (const auto& p : spec.locals) {
        if (impl.locals.count(p) || impl.clocks.count(p))
            prop_map[p] = fresh(p);
    }
    if (clock_map.empty() && prop_map.empty()) return spec;

    auto mapped = [](const std::map<std::string, std::string>& m,
                     const std::string& name) {
        auto it = m.find(name);
        return it == m.end() ? name : it->second;
    };

    Tea out = spec;
    out.clocks.clear();
    for (const auto& x : spec.clocks) out.clocks.insert(mapped(clock_map, x));
    out.locals.clear();
    for (const auto& p : spec.locals) out.locals.insert(mapped(prop_map, p));
    out.init = rename(spec.init, clock_map, prop_map);
    out.invariant = rename(spec.invariant, clock_map, prop_map);
    for (auto& t : out.transitions) {
        t.guard = rename(t.guard, clock_map, prop_map);
        PartialAssignment a;
        for (const auto& x : t.assign.clock_resets)
            a.clock_resets.insert(mapped(clock_map, x));
        for (const auto& [p, v] : t.assign.prop_sets)
            a.prop_sets[mapped(prop_map, p)] = v;
        t.assign = std::move(a);
    }
    return out;
}

std::int64_t tea_max_constant(const Tea& a) {
    std::int64_t c = std::max(max_constant(a.init), max_constant(a.invariant));
    for (const auto& t : a.transitions)
        c = std::max(c, max_constant(t.guard));
    return c;
}

CompiledTea compile_tea(const Tea& a, const UniversePtr& u) {
    CompiledTea out;
    out.name = a.name;
    out.init = compile(a.init, u);
    out.invariant = compile(a.invariant, u);
    for (const auto& x : a.clocks) out.clock_vars.push_back(u->require_var(x));
    for (const auto& p : a.locals)
        out.local_props.push_back(u->require_prop(p));

    auto compile_transition = [&](const Transition& t, bool is_null) {
        CompiledTransition ct{t.label, compile(t.guard, u), {}, {}, is_null};
        for (const auto& x : t.assign.clock_resets)
            ct.resets.push_back(u->require_var(x));
        for (const auto& [p, v] : t.assign.prop_sets)
            ct.writes.emplace_back(u->require_prop(p), v);
        return ct;
    };
    for (const auto& t : a.transitions)
        out.transitions.push_back(compile_transition(t, false));
    out.transitions.push_back(compile_transition(Tea::null_transition(), true));
    return out;
}

}  // namespace

CheckContext CheckContext::build(const Tea& impl, const Tea& spec) {
    impl.validate();
    spec.validate();
    if (impl.events != spec.events)
        throw std::invalid_argument("event alphabets differ between '" +
                                    impl.name + "' and '" + spec.name + "'");
    if (impl.globals != spec.globals)
        throw std::invalid_argument("global propositions differ between '" +
                                    impl.name + "' and '" + spec.name + "'");

    CheckContext ctx;
    ctx.renamed_spec = rename_collisions(impl, spec);

    std::vector<std::string> clocks(impl.clocks.begin(), impl.clocks.end());
    clocks.insert(clocks.end(), ctx.renamed_spec.clocks.begin(),
                  ctx.renamed_spec.clocks.end());
    std::vector<std::string> props(impl.globals.begin(), impl.globals.end());
    props.insert(props.end(), impl.locals.begin(), impl.locals.end());
    props.insert(props.end(), ctx.renamed_spec.locals.begin(),
                 ctx.renamed_spec.locals.end());
    ctx.universe = VarUniverse::make(clocks, props);

    ctx.max_const = std::max<std::int64_t>(
        1, std::max(tea_max_constant(impl), tea_max_constant(ctx.renamed_spec)));

    ctx.a1 = compile_tea(impl, ctx.universe);
    ctx.a2 = compile_tea(ctx.renamed_spec, ctx.universe);

    std::vector<Transition> t1 = impl.transitions;
    t1.push_back(Tea::null_transition());
    std::vector<Transition> t2 = ctx.renamed_spec.transitions;
    t2.push_back(Tea::null_transition());
    for (const auto& e1 : t1) {
        std::vector<std::size_t> row;
        for (std::size_t j = 0; j < t2.size(); ++j) {
            if (compatible(e1, t2[j], impl.globals)) row.push_back(j);
        }
        ctx.compat.push_back(std::move(row));
    }
    return ctx;
}

SingleContext SingleContext::build(const Tea& a) {
    a.validate();
    SingleContext ctx;
    std::vector<std::string> clocks(a.clocks.begin(), a.clocks.end());
    std::vector<std::string> props(a.globals.begin(), a.globals.end());
    props.insert(props.end(), a.locals.begin(), a.locals.end());
    ctx.universe = VarUniverse::make(clocks, props);
    ctx.max_const = std::max<std::int64_t>(1, tea_max_constant(a));
    ctx.tea = compile_tea(a, ctx.universe);
    return ctx;
}

}  // namespace tsim
