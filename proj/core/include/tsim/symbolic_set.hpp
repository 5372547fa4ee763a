// ============================================================================
// tsim/symbolic_set.hpp — Finite unions of cube/zone cells
// ============================================================================
//
// A SymbolicSet represents a (possibly nonconvex) set of states over the
// propositions and variables of one VarUniverse, as a finite union of cells.
// Each cell is a conjunction: a Cube over the propositions and a Zone over
// the variables. This is the workhorse representation for invariants, guard
// preconditions and the shrinking simulation relation.
//
// All operations are exact. Unions may overlap; reduce() keeps the cell list
// small by dropping empty and subsumed cells. Negation multiplies cells out
// atom by atom, so callers should prefer difference() over intersect(negate)
// where possible.
//
// The symbolic primitives mirror the zone layer, lifted cellwise:
//
//   eliminate        existential projection of propositions and variables
//   shifted          displace time-advancing variables by a displacement var
//   path_constraint  "holds along the whole segment" closure
//   assign_precondition  weakest precondition of a reset/assignment
//   replace_z        rename the auxiliary clock onto the delta variable
//   extrapolated     maximal-constant widening, cellwise
//
// ============================================================================

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsim/cube.hpp"
#include "tsim/rational.hpp"
#include "tsim/universe.hpp"
#include "tsim/zone.hpp"

namespace tsim {

struct Cell {
    Cube cube;
    Zone zone;
};

class SymbolicSet {
public:
    /// The empty set.
    static SymbolicSet bottom(UniversePtr u);
    /// All states (within variable domains).
    static SymbolicSet top(UniversePtr u);
    /// A single cell.
    static SymbolicSet of_cell(Cell c);
    static SymbolicSet of_zone(UniversePtr u, Zone z);
    /// A union of cells, normalized on construction.
    static SymbolicSet of_cells(UniversePtr u, std::vector<Cell> cs);

    const UniversePtr& universe_ptr() const { return u_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t cell_count() const { return cells_.size(); }

    bool is_empty() const;

    // ── Boolean operations ──────────────────────────────────────────────

    void union_with(const SymbolicSet& other);
    SymbolicSet intersect(const SymbolicSet& other) const;
    SymbolicSet negate() const;
    /// this minus other.
    SymbolicSet difference(const SymbolicSet& other) const;
    /// Does this contain other?
    bool includes(const SymbolicSet& other) const;
    bool same_set_as(const SymbolicSet& other) const {
        return includes(other) && other.includes(*this);
    }

    // ── Symbolic primitives ─────────────────────────────────────────────

    /// Existentially project out the given propositions and variables.
    SymbolicSet eliminate(const std::vector<std::size_t>& props,
                          const std::vector<std::size_t>& vars) const;

    /// See Zone::shift_vars.
    SymbolicSet shifted(std::size_t disp_var) const;

    /// The (state, delay) pairs such that this set holds at every instant
    /// of [0, delay], delay >= 0. disp_var carries the negated delay, so
    /// the result constrains disp_var <= 0. Propositions do not change
    /// along a delay, so cube literals must simply hold.
    SymbolicSet path_constraint(std::size_t disp_var) const;

    /// Mirror image: this set holds at every instant of [-d, 0] where
    /// disp_var carries d >= 0 (a displacement into the past).
    SymbolicSet past_constraint(std::size_t disp_var) const;

    /// Weakest precondition of "reset the given clocks to 0 and force the
    /// given propositions": the states whose updated image lies in this set.
    SymbolicSet assign_precondition(
        const std::vector<std::size_t>& reset_vars,
        const std::vector<std::pair<std::size_t, bool>>& prop_sets) const;

    /// Forward image of the same update: the states reachable by applying
    /// "reset the given clocks to 0 and force the given propositions" to a
    /// member of this set.
    SymbolicSet assign_image(
        const std::vector<std::size_t>& reset_vars,
        const std::vector<std::pair<std::size_t, bool>>& prop_sets) const;

    /// Move the constraints of the auxiliary clock onto the delta variable.
    SymbolicSet replace_z() const;

    SymbolicSet extrapolated(std::int64_t max_const) const;

    // ── Convenience constraint helpers ──────────────────────────────────

    /// Conjoin a single difference constraint to every cell.
    SymbolicSet constrained(std::size_t i, std::size_t j, Bound b) const;

    // ── Queries and output ──────────────────────────────────────────────

    bool contains(const std::vector<bool>& props,
                  const std::vector<Rational>& point) const;

    /// Canonicalize lightly: drop empty cells, deduplicate, drop subsumed
    /// cells, order deterministically.
    void reduce();

    std::string to_string(bool multiline = false) const;

    /// Universe-less empty set; usable only as a placeholder to assign over.
    SymbolicSet() = default;

private:
    explicit SymbolicSet(UniversePtr u) : u_(std::move(u)) {}

    UniversePtr u_;
    std::vector<Cell> cells_;
};

}  // namespace tsim
