#include "tsim/model.hpp"

#include <stdexcept>

namespace tsim {

// ============================================================================
// Assignments
// ============================================================================

PartialAssignment PartialAssignment::then(const PartialAssignment& later) const {
    PartialAssignment out = *this;
    for (const auto& c : later.clock_resets) out.clock_resets.insert(c);
    for (const auto& [p, v] : later.prop_sets) out.prop_sets[p] = v;
    return out;
}

Transition Tea::null_transition() {
    Transition t;
    t.guard = Pred::mk_true();
    return t;
}

// ============================================================================
// Validation
// ============================================================================

namespace {

void check_predicate_names(const Tea& a, const PredPtr& p,
                           const char* which) {
    std::set<std::string> props, clocks;
    collect_names(p, props, clocks);
    for (const auto& q : props) {
        if (!a.globals.count(q) && !a.locals.count(q))
            throw std::invalid_argument(a.name + ": " + which +
                                        " uses undeclared proposition '" + q +
                                        "'");
    }
    for (const auto& x : clocks) {
        if (!a.clocks.count(x))
            throw std::invalid_argument(a.name + ": " + which +
                                        " uses undeclared clock '" + x + "'");
    }
}

}  // namespace

void Tea::validate() const {
    for (const auto& p : globals) {
        if (locals.count(p))
            throw std::invalid_argument(
                name + ": '" + p + "' declared both global and local");
        if (clocks.count(p))
            throw std::invalid_argument(
                name + ": '" + p + "' declared both proposition and clock");
    }
    for (const auto& p : locals) {
        if (clocks.count(p))
            throw std::invalid_argument(
                name + ": '" + p + "' declared both proposition and clock");
    }
    check_predicate_names(*this, init, "init");
    check_predicate_names(*this, invariant, "invariant");
    std::size_t idx = 0;
    for (const auto& t : transitions) {
        std::string where = name + ": transition " + std::to_string(idx);
        for (const auto& ev : t.label) {
            if (!events.count(ev))
                throw std::invalid_argument(where + " uses undeclared event '" +
                                            ev + "'");
        }
        check_predicate_names(*this, t.guard, "transition guard");
        for (const auto& x : t.assign.clock_resets) {
            if (!clocks.count(x))
                throw std::invalid_argument(where + " resets undeclared clock '" +
                                            x + "'");
        }
        for (const auto& [p, v] : t.assign.prop_sets) {
            (void)v;
            if (!globals.count(p) && !locals.count(p))
                throw std::invalid_argument(
                    where + " assigns undeclared proposition '" + p + "'");
        }
        ++idx;
    }
}

bool tea_equal(const Tea& a, const Tea& b) {
    if (a.name != b.name || a.events != b.events || a.clocks != b.clocks ||
        a.globals != b.globals || a.locals != b.locals)
        return false;
    if (!equal(a.init, b.init) || !equal(a.invariant, b.invariant))
        return false;
    if (a.transitions.size() != b.transitions.size()) return false;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const Transition& s = a.transitions[i];
        const Transition& t = b.transitions[i];
        if (s.label != t.label || !equal(s.guard, t.guard) ||
            !(s.assign == t.assign))
            return false;
    }
    return true;
}

// ============================================================================
// Concrete states
// ============================================================================

State State::delayed(const Rational& d) const {
    State out = *this;
    for (auto& [x, v] : out.clocks) v = v + d;
    return out;
}

State State::assigned(const PartialAssignment& a) const {
    State out = *this;
    for (const auto& x : a.clock_resets) out.clocks[x] = Rational(0);
    for (const auto& [p, v] : a.prop_sets) out.props[p] = v;
    return out;
}

bool State::satisfies(const PredPtr& p) const {
    return eval(
        p, [&](const std::string& q) { return props.at(q); },
        [&](const std::string& x) { return clocks.at(x); });
}

// ============================================================================
// Compatibility and steps
// ============================================================================

bool compatible(const Transition& e1, const Transition& e2,
                const std::set<std::string>& globals) {
    if (e1.label != e2.label) return false;
    for (const auto& p : globals) {
        auto i1 = e1.assign.prop_sets.find(p);
        auto i2 = e2.assign.prop_sets.find(p);
        bool d1 = i1 != e1.assign.prop_sets.end();
        bool d2 = i2 != e2.assign.prop_sets.end();
        if (d1 != d2) return false;
        if (d1 && i1->second != i2->second) return false;
    }
    return true;
}

std::vector<Transition> compatible_set(const Transition& e1, const Tea& spec) {
    std::vector<Transition> out;
    for (const auto& e2 : spec.transitions) {
        if (compatible(e1, e2, spec.globals)) out.push_back(e2);
    }
    Transition null = Tea::null_transition();
    if (compatible(e1, null, spec.globals)) out.push_back(null);
    return out;
}

std::optional<State> discrete_step(const State& s, const Transition& e,
                                   const Tea& a) {
    if (!s.satisfies(e.guard)) return std::nullopt;
    State next = s.assigned(e.assign);
    if (!next.satisfies(a.invariant)) return std::nullopt;
    return next;
}

}  // namespace tsim
