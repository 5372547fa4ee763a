// ============================================================================
// tsim/zone.hpp — Difference bound matrices over a variable universe
// ============================================================================
//
// A Zone is a conjunction of difference constraints x_i - x_j <= c (or < c)
// over the variables of a VarUniverse, represented as a difference bound
// matrix. Entry (i, j) bounds x_i - x_j; variable 0 is the constant zero,
// so entry (i, 0) is an upper bound on x_i and entry (0, i) a negated lower
// bound.
//
// The matrix is kept lazily canonical: mutating operations mark it dirty and
// queries run Floyd-Warshall closure on demand. A zone detected empty stays
// empty.
//
// Beyond the usual intersection/inclusion operations the class provides the
// primitives the symbolic layer is built from:
//
//   free_var     existential projection of one variable, restoring the
//                variable's domain (clocks are nonnegative, auxiliary
//                variables unrestricted)
//   shift_vars   reinterpret the zone at a point displaced by the value of
//                a displacement variable: all time-advancing variables are
//                moved by that amount
//   merge_var    rename a variable onto another, unconstrained one
//   widen        coarsen bounds beyond a maximal constant
//
// ============================================================================

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsim/bound.hpp"
#include "tsim/rational.hpp"
#include "tsim/universe.hpp"

namespace tsim {

/// One difference constraint x_i - x_j (bound), as produced by
/// Zone::minimal_constraints().
struct DiffConstraint {
    std::size_t i = 0;
    std::size_t j = 0;
    Bound bound;
};

class Zone {
public:
    /// The full domain: clocks nonnegative, everything else unrestricted.
    static Zone universe(UniversePtr u);

    /// The empty zone.
    static Zone empty(UniversePtr u);

    const UniversePtr& universe_ptr() const { return u_; }
    std::size_t dim() const { return n_; }

    // ── Constraint assembly ─────────────────────────────────────────────

    /// Tighten entry (i, j): conjoin x_i - x_j (bound). No-op if the
    /// current entry is already at least as tight.
    void constrain(std::size_t i, std::size_t j, Bound b);

    /// Conjoin x_i - x_j == c.
    void constrain_eq(std::size_t i, std::size_t j, std::int64_t c) {
        constrain(i, j, Bound::weak(c));
        constrain(j, i, Bound::weak(-c));
    }

    // ── Queries ─────────────────────────────────────────────────────────

    bool is_empty() const;

    /// Canonical entry (i, j). The zone must not be empty.
    Bound at(std::size_t i, std::size_t j) const;

    /// Is this zone contained in other?
    bool subset_of(const Zone& other) const;

    bool same_set_as(const Zone& other) const {
        return subset_of(other) && other.subset_of(*this);
    }

    /// Does the (exact rational) point satisfy all constraints?
    /// point[i] is the value of variable i; point[0] must be zero.
    bool contains(const std::vector<Rational>& point) const;

    // ── Combination ─────────────────────────────────────────────────────

    void intersect_with(const Zone& other);

    Zone intersected(const Zone& other) const {
        Zone r = *this;
        r.intersect_with(other);
        return r;
    }

    /// If the union of this zone and other is itself a zone, replace this
    /// zone with that union and return true; otherwise leave both untouched
    /// and return false. Neither zone may be empty.
    bool try_union_with(const Zone& other);

    // ── Symbolic primitives ─────────────────────────────────────────────

    /// Existentially project out variable i, restoring its domain
    /// (clock variables come back as x >= 0, others unconstrained).
    void free_var(std::size_t i);

    /// Displace every time-advancing variable by the value of the
    /// displacement variable d: the result holds at v iff this zone held
    /// with all clocks and auxiliary clocks reduced by v(d).
    ///
    /// Only legal when the zone does not constrain d or any other
    /// displacement variable against the shifted ones.
    void shift_vars(std::size_t d);

    /// Transfer the constraints of src onto dst (which must be
    /// unconstrained) and free src.
    void merge_var(std::size_t src, std::size_t dst);

    /// The zone with strictness dropped on every entry that varies under
    /// time elapse (exactly one endpoint shifts with time). These are the
    /// only faces a delay segment can cross, so a segment whose endpoints
    /// satisfy the relaxed bounds keeps its interior inside the original
    /// zone. The zone must not be empty.
    Zone time_closure() const;

    /// Extrapolate beyond the maximal constant c: upper bounds above c are
    /// dropped, bounds below -c are relaxed to (< -c), then the matrix is
    /// re-canonicalized once.
    void widen(std::int64_t c);

    // ── Inspection ──────────────────────────────────────────────────────

    /// A small set of constraints whose conjunction (within the universe
    /// domain) equals this zone. Domain defaults (clock >= 0) and entries
    /// implied by other listed ones are omitted. The zone must not be empty.
    std::vector<DiffConstraint> minimal_constraints() const;

    /// Render as "x <= 3 & y - x < 2"; "true" when only the domain remains.
    std::string to_string() const;

private:
    Zone(UniversePtr u, bool make_empty);

    Bound& m(std::size_t i, std::size_t j) { return mat_[i * n_ + j]; }
    const Bound& m(std::size_t i, std::size_t j) const {
        return mat_[i * n_ + j];
    }

    void close() const;

    UniversePtr u_;
    std::size_t n_;
    mutable std::vector<Bound> mat_;
    mutable bool closed_ = true;
    mutable bool empty_ = false;
};

}  // namespace tsim
