// ============================================================================
// tsim/region.hpp — Finite quotient of the dense state space
// ============================================================================
//
// Two states are equivalent when every difference of variables (including
// the implicit zero) falls in the same class: an exact integer in [-C-1,
// C+1], an open unit interval between such integers, or beyond the cap on
// either side. Equivalent states satisfy exactly the same zone constraints
// with constants up to C, age across the same boundaries in the same order,
// and enable the same guards, so the quotient is finite and faithful: the
// brute-force oracle works region by region, one representative point each.
//
// A region is stored as the canonical zone of its class constraints plus a
// full proposition valuation, and interned: equal regions share one id.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsim/symbolic_set.hpp"

namespace tsim {

/// One exact rational point of a nonempty canonical zone.
std::vector<Rational> pick_point(const Zone& z);

class RegionSpace {
public:
    struct Region {
        std::vector<bool> props;
        Zone zone;
    };

    RegionSpace(UniversePtr u, std::int64_t max_const);

    const UniversePtr& universe_ptr() const { return u_; }
    /// Differences at or beyond this magnitude are not distinguished.
    std::int64_t cap() const { return cap_; }
    std::size_t size() const { return regions_.size(); }

    /// The region containing the given state. point[0] must be zero.
    std::size_t of_point(const std::vector<bool>& props,
                         const std::vector<Rational>& point);

    const Region& at(std::size_t id) const { return regions_[id]; }
    const std::vector<Rational>& representative(std::size_t id) const {
        return reps_[id];
    }

    /// The immediately following region under time passage; id itself when
    /// every time-advancing variable has aged beyond the cap.
    std::size_t time_successor(std::size_t id);

    /// Time successor with one variable pinned: frozen neither advances nor
    /// contributes boundaries (it keeps its value while the rest age).
    std::size_t time_successor_frozen(std::size_t id, std::size_t frozen);

    /// Region after resetting the given clocks and forcing the given
    /// propositions.
    std::size_t updated(std::size_t id, const std::vector<std::size_t>& resets,
                        const std::vector<std::pair<std::size_t, bool>>& writes);

    /// Region after setting one variable to zero (auxiliary bookkeeping).
    std::size_t with_var_zeroed(std::size_t id, std::size_t var);

    /// Does the region's representative lie in s? By construction the
    /// answer is uniform over the region for any set with constants <= C.
    bool satisfies(std::size_t id, const SymbolicSet& s) const {
        return s.contains(regions_[id].props, reps_[id]);
    }

    /// Do a and b agree on the given variables (differences among them and
    /// against zero) and propositions?
    bool same_projection(std::size_t a, std::size_t b,
                         const std::vector<std::size_t>& vars,
                         const std::vector<std::size_t>& props) const;

    /// The region as a one-cell symbolic set (full proposition valuation).
    SymbolicSet as_set(std::size_t id) const;

private:
    std::size_t successor_core(std::size_t id, std::size_t frozen);

    UniversePtr u_;
    std::int64_t cap_;
    std::vector<Region> regions_;
    std::vector<std::vector<Rational>> reps_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Every region intersecting s, found by repeated point picking and region
/// subtraction. Throws std::runtime_error past the limit.
std::vector<std::size_t> regions_of(RegionSpace& space, const SymbolicSet& s,
                                    std::size_t limit);

}  // namespace tsim
