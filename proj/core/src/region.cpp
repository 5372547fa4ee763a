#include "tsim/region.hpp"

#include <cassert>
#include <optional>
#include <stdexcept>

namespace tsim {

namespace {

struct Edge {
    Rational value;
    bool strict;
};

// Tightest of two bounds of the same direction: smaller value wins, strict
// beats weak on ties.
void tighten_upper(std::optional<Edge>& e, Rational v, bool strict) {
    if (!e || v < e->value || (v == e->value && strict)) e = Edge{v, strict};
}

}  // namespace

std::vector<Rational> pick_point(const Zone& z) {
    assert(!z.is_empty());
    const std::size_t n = z.dim();
    std::vector<Rational> v(n, Rational(0));
    // Canonical difference constraints are path consistent, so choosing
    // variable by variable inside the interval induced by the already
    // chosen ones always extends to a full point.
    for (std::size_t i = 1; i < n; ++i) {
        std::optional<Edge> hi, lo;  // lo holds the negated lower bound
        for (std::size_t j = 0; j < i; ++j) {
            const Bound up = z.at(i, j);  // v_i - v_j <= up
            if (!up.is_infinite())
                tighten_upper(hi, v[j] + Rational(up.value), up.strict);
            const Bound dn = z.at(j, i);  // v_j - v_i <= dn
            if (!dn.is_infinite())
                tighten_upper(lo, Rational(dn.value) - v[j], dn.strict);
        }
        if (hi && lo) {
            const Rational lower = Rational(0) - lo->value;
            if (lower == hi->value) {
                assert(!hi->strict && !lo->strict);
                v[i] = lower;
            } else {
                v[i] = (lower + hi->value) / Rational(2);
            }
        } else if (lo) {
            const Rational lower = Rational(0) - lo->value;
            v[i] = lo->strict ? lower + Rational(1) : lower;
        } else if (hi) {
            v[i] = hi->strict ? hi->value - Rational(1) : hi->value;
        }
    }
    assert(z.contains(v));
    return v;
}

RegionSpace::RegionSpace(UniversePtr u, std::int64_t max_const)
    : u_(std::move(u)), cap_(std::max<std::int64_t>(1, max_const) + 1) {}

std::size_t RegionSpace::of_point(const std::vector<bool>& props,
                                  const std::vector<Rational>& point) {
    assert(props.size() == u_->prop_count());
    assert(point.size() == u_->var_count());
    assert(point[0] == Rational(0));
    const std::size_t n = point.size();
    Zone z = Zone::universe(u_);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational d = point[i] - point[j];
            if (d >= Rational(cap_)) {
                z.constrain(j, i, Bound::weak(-cap_));
            } else if (d <= Rational(-cap_)) {
                z.constrain(i, j, Bound::weak(-cap_));
            } else if (d.is_integer()) {
                z.constrain_eq(i, j, d.num);
            } else {
                z.constrain(i, j, Bound::strictly(d.floor() + 1));
                z.constrain(j, i, Bound::strictly(-d.floor()));
            }
        }
    }
    std::string key;
    key.reserve(props.size() + n * n * sizeof(std::int64_t));
    for (bool b : props) key.push_back(b ? '1' : '0');
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::int64_t e = z.at(i, j).encoded();
            key.append(reinterpret_cast<const char*>(&e), sizeof(e));
        }
    }
    auto [it, fresh] = index_.try_emplace(std::move(key), regions_.size());
    if (fresh) {
        reps_.push_back(pick_point(z));
        regions_.push_back({props, std::move(z)});
    }
    return it->second;
}

std::size_t RegionSpace::time_successor(std::size_t id) {
    return successor_core(id, static_cast<std::size_t>(-1));
}

std::size_t RegionSpace::time_successor_frozen(std::size_t id,
                                               std::size_t frozen) {
    return successor_core(id, frozen);
}

std::size_t RegionSpace::successor_core(std::size_t id, std::size_t frozen) {
    const auto& rep = reps_[id];
    const std::size_t n = rep.size();
    bool immediate = false;
    std::optional<Rational> dist;
    for (std::size_t i = 1; i < n; ++i) {
        if (i == frozen || !u_->shifts_with_time(i)) continue;
        if (rep[i] >= Rational(cap_)) continue;  // aged out
        assert(rep[i] > Rational(-cap_));
        const Rational f = rep[i].frac();
        if (f == Rational(0)) immediate = true;
        const Rational d = Rational(1) - f;
        if (!dist || d < *dist) dist = d;
    }
    if (!dist) return id;
    const Rational t = immediate ? *dist / Rational(2) : *dist;
    std::vector<Rational> moved = rep;
    for (std::size_t i = 1; i < n; ++i)
        if (i != frozen && u_->shifts_with_time(i)) moved[i] = moved[i] + t;
    return of_point(regions_[id].props, moved);
}

std::size_t RegionSpace::updated(
    std::size_t id, const std::vector<std::size_t>& resets,
    const std::vector<std::pair<std::size_t, bool>>& writes) {
    std::vector<Rational> point = reps_[id];
    std::vector<bool> props = regions_[id].props;
    for (auto r : resets) point[r] = Rational(0);
    for (auto [k, v] : writes) props[k] = v;
    return of_point(props, point);
}

std::size_t RegionSpace::with_var_zeroed(std::size_t id, std::size_t var) {
    std::vector<Rational> point = reps_[id];
    point[var] = Rational(0);
    return of_point(regions_[id].props, point);
}

bool RegionSpace::same_projection(std::size_t a, std::size_t b,
                                  const std::vector<std::size_t>& vars,
                                  const std::vector<std::size_t>& props) const {
    const Region& ra = regions_[a];
    const Region& rb = regions_[b];
    for (auto k : props)
        if (ra.props[k] != rb.props[k]) return false;
    auto entry_equal = [&](std::size_t i, std::size_t j) {
        return ra.zone.at(i, j).encoded() == rb.zone.at(i, j).encoded();
    };
    for (auto i : vars) {
        if (!entry_equal(i, 0) || !entry_equal(0, i)) return false;
        for (auto j : vars)
            if (i != j && !entry_equal(i, j)) return false;
    }
    return true;
}

SymbolicSet RegionSpace::as_set(std::size_t id) const {
    const Region& r = regions_[id];
    Cube c(u_);
    for (std::size_t k = 0; k < r.props.size(); ++k) c.set(k, r.props[k]);
    return SymbolicSet::of_cell({std::move(c), r.zone});
}

std::vector<std::size_t> regions_of(RegionSpace& space, const SymbolicSet& s,
                                    std::size_t limit) {
    std::vector<std::size_t> out;
    SymbolicSet rest = s;
    rest.reduce();
    while (!rest.is_empty()) {
        const Cell& cell = rest.cells().front();
        std::vector<bool> props(space.universe_ptr()->prop_count(), false);
        for (std::size_t k = 0; k < props.size(); ++k)
            if (cell.cube.fixes(k)) props[k] = cell.cube.fixed_value(k);
        const std::size_t id = space.of_point(props, pick_point(cell.zone));
        out.push_back(id);
        if (out.size() > limit)
            throw std::runtime_error(
                "region enumeration exceeded the configured limit");
        rest = rest.difference(space.as_set(id));
    }
    return out;
}

}  // namespace tsim
