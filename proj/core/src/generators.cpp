#include "tsim/generators.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsim/predicate.hpp"

namespace tsim {

namespace {

PredPtr conj(std::vector<PredPtr> ps) {
    PredPtr r = Pred::mk_true();
    for (auto& p : ps) r = Pred::mk_and(std::move(r), std::move(p));
    return r;
}

PredPtr prop(const std::string& s) { return Pred::mk_prop(s); }
PredPtr nprop(const std::string& s) { return Pred::mk_not(prop(s)); }
PredPtr le(const std::string& x, std::int64_t c) {
    return Pred::mk_atom(x, CmpOp::Le, c);
}
PredPtr ge(const std::string& x, std::int64_t c) {
    return Pred::mk_atom(x, CmpOp::Ge, c);
}

/// invariant clause "in this mode, the clock is at most c"
PredPtr deadline(const std::string& mode, const std::string& x,
                 std::int64_t c) {
    return Pred::mk_or(nprop(mode), le(x, c));
}

std::string num(const std::string& base, std::size_t i) {
    return base + std::to_string(i);
}

// ── Fischer ─────────────────────────────────────────────────────────────
//
// Process i cycles idle → setting → waiting → critical with one clock.
// The lock is a one-hot block of globals: fr (free) and lk1..lkm. A process
// may start when the lock is free, must write its own id within ttA, then
// waits; after ttB it enters the critical section if the lock still holds
// its id, and falls back to idle otherwise.

Tea fischer_side(const std::string& name, std::size_t m, std::int64_t tt_a,
                 std::int64_t tt_b, std::int64_t enter1) {
    Tea a;
    a.name = name;
    a.globals.insert("fr");
    for (std::size_t i = 1; i <= m; ++i) a.globals.insert(num("lk", i));

    std::vector<PredPtr> init{prop("fr")};
    for (std::size_t i = 1; i <= m; ++i) init.push_back(nprop(num("lk", i)));
    std::vector<PredPtr> inv;

    for (std::size_t i = 1; i <= m; ++i) {
        const std::string x = num("x", i);
        const std::string idl = num("idl", i), pre = num("pre", i),
                          wt = num("wt", i), cr = num("cr", i);
        a.clocks.insert(x);
        for (const auto& p : {idl, pre, wt, cr}) a.locals.insert(p);
        for (const auto& e : {"st", "wr", "en", "rt", "ex"})
            a.events.insert(num(e, i));

        init.push_back(prop(idl));
        for (const auto& p : {pre, wt, cr}) init.push_back(nprop(p));
        init.push_back(le(x, 0));
        inv.push_back(deadline(pre, x, tt_a));

        // lock := i (wr) and lock := free (ex) write the whole block
        std::map<std::string, bool> lock_i{{"fr", false}},
            lock_free{{"fr", true}};
        for (std::size_t j = 1; j <= m; ++j) {
            lock_i[num("lk", j)] = j == i;
            lock_free[num("lk", j)] = false;
        }

        a.transitions.push_back({{num("st", i)},
                                 Pred::mk_and(prop(idl), prop("fr")),
                                 {{x}, {{idl, false}, {pre, true}}}});
        PartialAssignment wr{{x}, lock_i};
        wr.prop_sets[pre] = false;
        wr.prop_sets[wt] = true;
        a.transitions.push_back({{num("wr", i)}, prop(pre), std::move(wr)});
        a.transitions.push_back(
            {{num("en", i)},
             conj({prop(wt), prop(num("lk", i)),
                   ge(x, i == 1 ? enter1 : tt_b)}),
             {{}, {{wt, false}, {cr, true}}}});
        a.transitions.push_back({{num("rt", i)},
                                 Pred::mk_and(prop(wt), nprop(num("lk", i))),
                                 {{}, {{wt, false}, {idl, true}}}});
        PartialAssignment ex{{}, lock_free};
        ex.prop_sets[cr] = false;
        ex.prop_sets[idl] = true;
        a.transitions.push_back({{num("ex", i)}, prop(cr), std::move(ex)});
    }

    a.init = conj(std::move(init));
    a.invariant = conj(std::move(inv));
    a.validate();
    return a;
}

// ── CSMA/CD ─────────────────────────────────────────────────────────────
//
// One bus, m senders, one clock each. Sender i begins transmitting when the
// bus is free; a second sender beginning within the propagation window
// turns the bus into a collision, everyone still transmitting detects it
// and backs off, and the bus clears once no one transmits. Transmission
// takes exactly 104 time units, the propagation window is 26, and every
// recovery deadline is 52.

constexpr std::int64_t kSigma = 26;
constexpr std::int64_t kTwoSigma = 52;
constexpr std::int64_t kLambda = 104;

Tea csma_side(const std::string& name, std::size_t m, std::int64_t retry1,
              std::int64_t lambda, bool trap, bool trap_event) {
    Tea a;
    a.name = name;
    for (const auto& g : {"bfr", "bbsy", "bcol"}) a.globals.insert(g);
    a.clocks.insert("xb");
    a.events.insert("clr");
    if (trap_event) a.events.insert("snr");

    std::vector<PredPtr> init{prop("bfr"), nprop("bbsy"), nprop("bcol"),
                              le("xb", 0)};
    std::vector<PredPtr> inv{deadline("bcol", "xb", kTwoSigma)};

    PredPtr nobody_sending = Pred::mk_true();

    for (std::size_t i = 1; i <= m; ++i) {
        const std::string y = num("y", i);
        const std::string w = num("w", i), t = num("t", i), r = num("r", i);
        a.clocks.insert(y);
        for (const auto& p : {w, t, r}) a.locals.insert(p);
        for (const auto& e : {"beg", "bsy", "col", "cd", "end", "rty"})
            a.events.insert(num(e, i));

        init.push_back(prop(w));
        for (const auto& p : {t, r}) init.push_back(nprop(p));
        init.push_back(le(y, 0));
        inv.push_back(deadline(t, y, lambda));
        inv.push_back(deadline(r, y, i == 1 ? retry1 : kTwoSigma));
        nobody_sending = Pred::mk_and(std::move(nobody_sending), nprop(t));

        a.transitions.push_back(
            {{num("beg", i)},
             Pred::mk_and(prop(w), prop("bfr")),
             {{y, "xb"},
              {{"bfr", false}, {"bbsy", true}, {w, false}, {t, true}}}});
        a.transitions.push_back({{num("bsy", i)},
                                 Pred::mk_and(prop(w), prop("bbsy")),
                                 {{y}, {{w, false}, {r, true}}}});
        a.transitions.push_back(
            {{num("col", i)},
             conj({prop(w), prop("bbsy"),
                   Pred::mk_atom("xb", CmpOp::Lt, kSigma)}),
             {{y, "xb"},
              {{"bbsy", false}, {"bcol", true}, {w, false}, {r, true}}}});
        a.transitions.push_back({{num("cd", i)},
                                 Pred::mk_and(prop(t), prop("bcol")),
                                 {{y}, {{t, false}, {r, true}}}});
        a.transitions.push_back(
            {{num("end", i)},
             Pred::mk_and(prop(t), ge(y, lambda)),
             {{}, {{"bbsy", false}, {"bfr", true}, {t, false}, {w, true}}}});
        a.transitions.push_back({{num("rty", i)},
                                 prop(r),
                                 {{y}, {{r, false}, {w, true}}}});
    }

    a.transitions.push_back(
        {{"clr"},
         conj({prop("bcol"), ge("xb", kSigma), std::move(nobody_sending)}),
         {{}, {{"bcol", false}, {"bfr", true}}}});

    if (trap) {
        // A mode whose invariant stops the clock: every run from it is Zeno.
        a.locals.insert("z1");
        init.push_back(nprop("z1"));
        inv.push_back(deadline("z1", "y1", 0));
        a.transitions.push_back(
            {{"snr"},
             Pred::mk_and(prop("w1"), ge("y1", kSigma)),
             {{"y1"}, {{"w1", false}, {"z1", true}}}});
    }

    a.init = conj(std::move(init));
    a.invariant = conj(std::move(inv));
    a.validate();
    return a;
}

// ── Producer / consumer ─────────────────────────────────────────────────
//
// The producer periodically writes the shared buffer: once it is empty, a
// write happens within [guard_lo, deadline]. Each of the m consumers wipes
// the buffer at its own pace.

Tea prodcons_side(const std::string& name, std::size_t m,
                  std::int64_t guard_lo, std::int64_t deadline_hi) {
    Tea a;
    a.name = name;
    a.globals.insert("dat");
    a.clocks.insert("xp");
    a.events.insert("put");

    std::vector<PredPtr> init{nprop("dat"), le("xp", 0)};
    PredPtr inv = Pred::mk_or(prop("dat"), le("xp", deadline_hi));

    a.transitions.push_back({{"put"},
                             Pred::mk_and(nprop("dat"), ge("xp", guard_lo)),
                             {{"xp"}, {{"dat", true}}}});

    for (std::size_t i = 1; i <= m; ++i) {
        const std::string y = num("yc", i);
        a.clocks.insert(y);
        a.events.insert(num("get", i));
        init.push_back(le(y, 0));
        a.transitions.push_back({{num("get", i)},
                                 Pred::mk_and(prop("dat"), ge(y, 5)),
                                 {{y}, {{"dat", false}}}});
    }

    a.init = conj(std::move(init));
    a.invariant = std::move(inv);
    a.validate();
    return a;
}

void collect_denominators(const PredPtr& p, const Rational& factor,
                          std::int64_t& l) {
    if (!p) return;
    if (p->kind == Pred::Kind::Atom) {
        const Rational scaled = Rational(p->constant) * factor;
        l = std::lcm(l, scaled.den);
    }
    collect_denominators(p->a, factor, l);
    collect_denominators(p->b, factor, l);
}

}  // namespace

TeaPair fischer_pair(std::size_t m, std::int64_t tt_a, std::int64_t tt_b,
                     FischerVariant variant) {
    if (m < 1) throw std::invalid_argument("fischer_pair: m must be >= 1");
    const std::int64_t enter1 =
        variant == FischerVariant::Ok ? tt_a : tt_b + 1;
    return {fischer_side("fischer_impl", m, tt_a, tt_b, tt_b),
            fischer_side("fischer_spec", m, tt_a, tt_b, enter1)};
}

TeaPair csma_pair(std::size_t m, CsmaVariant variant) {
    if (m < 1) throw std::invalid_argument("csma_pair: m must be >= 1");
    const bool trap = variant == CsmaVariant::NzOnly;
    // The broken pair keeps the implementation transmitting for a full
    // lambda while the specification requires the bus to be released by
    // two sigma, so the first completed transmission already has no match.
    const std::int64_t spec_lambda =
        variant == CsmaVariant::None ? kTwoSigma : kLambda;
    return {csma_side("csma_impl", m, kSigma, kLambda, trap, trap),
            csma_side("csma_spec", m, kTwoSigma, spec_lambda, false, trap)};
}

TeaPair prodcons_pair(std::size_t m, ProdConsVariant variant) {
    if (m < 1) throw std::invalid_argument("prodcons_pair: m must be >= 1");
    const std::int64_t impl_hi =
        variant == ProdConsVariant::Sim ? 15 : 20;
    return {prodcons_side("prodcons_impl", m, 5, impl_hi),
            prodcons_side("prodcons_spec", m, 0, 15)};
}

TeaPair scaled_pair(const TeaPair& p, std::int64_t num, std::int64_t den) {
    if (num <= 0 || den <= 0)
        throw std::invalid_argument("scaled_pair: scale must be positive");
    const Rational base(num, den);
    std::int64_t l = 1;
    for (const Tea* a : {&p.impl, &p.spec}) {
        collect_denominators(a->init, base, l);
        collect_denominators(a->invariant, base, l);
        for (const auto& e : a->transitions)
            collect_denominators(e.guard, base, l);
    }
    const Rational factor = base * Rational(l);
    TeaPair out = p;
    for (Tea* a : {&out.impl, &out.spec}) {
        a->init = scale(a->init, factor);
        a->invariant = scale(a->invariant, factor);
        for (auto& e : a->transitions) e.guard = scale(e.guard, factor);
    }
    return out;
}

}  // namespace tsim
