#include "tsim/symbolic_set.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace tsim {

namespace {

// Cap beyond which the quadratic subsumption sweep is skipped; plain
// deduplication still runs. Working sets stay far below this in practice.
constexpr std::size_t kSubsumptionCap = 1024;

// Pair-merge attempts allowed per reduction. Difference and negation chip
// cells into fragments whose union is often still a single cell; recombining
// them is what keeps working sets small. The budget stops a degenerate set
// from turning reduction itself quadratic-heavy.
constexpr std::size_t kMergeBudget = 131072;

int compare_zones(const Zone& a, const Zone& b) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto av = a.at(i, j).encoded();
            const auto bv = b.at(i, j).encoded();
            if (av != bv) return av < bv ? -1 : 1;
        }
    return 0;
}

/// FNV-1a over the closed matrix. Sorting and grouping by fingerprint first
/// keeps the full entrywise comparison off the hot path; equal zones always
/// share a fingerprint, and collisions only fall back to the full compare.
std::uint64_t zone_fingerprint(const Zone& z) {
    std::uint64_t h = 1469598103934665603ull;
    const std::size_t n = z.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            h ^= static_cast<std::uint64_t>(z.at(i, j).encoded());
            h *= 1099511628211ull;
        }
    return h;
}

/// A cell with its cached zone fingerprint, the working unit of reduce().
struct Keyed {
    std::uint64_t key;
    Cell cell;
};

/// Within runs of equal cubes (entries must be sorted by cube), replace
/// pairs whose zone union is convex by the union. Emptied slots are erased.
bool merge_zone_fragments(std::vector<Keyed>& es, std::size_t& budget) {
    bool merged = false;
    std::vector<bool> dead(es.size(), false);
    std::size_t lo = 0;
    while (lo < es.size()) {
        std::size_t hi = lo + 1;
        while (hi < es.size() && es[hi].cell.cube == es[lo].cell.cube) ++hi;
        for (std::size_t i = lo; i < hi; ++i) {
            if (dead[i]) continue;
            bool grew = false;
            for (std::size_t j = i + 1; j < hi && budget > 0; ++j) {
                if (dead[j]) continue;
                --budget;
                if (es[i].cell.zone.try_union_with(es[j].cell.zone)) {
                    dead[j] = true;
                    merged = grew = true;
                }
            }
            if (grew) es[i].key = zone_fingerprint(es[i].cell.zone);
            if (budget == 0) break;
        }
        lo = hi;
    }
    if (merged)
        std::erase_if(es, [&](const Keyed& e) {
            return dead[static_cast<std::size_t>(&e - es.data())];
        });
    return merged;
}

/// Within runs of equal zones (entries must be sorted by fingerprint and
/// zone), combine pairs of cubes that differ only in one literal's polarity
/// by freeing that literal.
bool merge_cube_fragments(std::vector<Keyed>& es, std::size_t& budget) {
    bool merged = false;
    std::vector<bool> dead(es.size(), false);
    std::size_t lo = 0;
    while (lo < es.size()) {
        std::size_t hi = lo + 1;
        while (hi < es.size() && es[hi].key == es[lo].key &&
               compare_zones(es[hi].cell.zone, es[lo].cell.zone) == 0)
            ++hi;
        for (std::size_t i = lo; i < hi; ++i) {
            if (dead[i]) continue;
            for (std::size_t j = i + 1; j < hi && budget > 0; ++j) {
                if (dead[j]) continue;
                --budget;
                const Cube& a = es[i].cell.cube;
                const Cube& b = es[j].cell.cube;
                std::size_t flip = a.size();
                bool ok = true;
                for (std::size_t k = 0; k < a.size(); ++k) {
                    if (a.get(k) == b.get(k)) continue;
                    if (a.fixes(k) && b.fixes(k) && flip == a.size()) {
                        flip = k;
                        continue;
                    }
                    ok = false;
                    break;
                }
                if (!ok || flip == a.size()) continue;
                es[i].cell.cube.clear(flip);
                dead[j] = true;
                merged = true;
            }
            if (budget == 0) break;
        }
        lo = hi;
    }
    if (merged) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (dead[i]) continue;
            if (w != i) cells[w] = std::move(cells[i]);
            ++w;
        }
        cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(w),
                    cells.end());
    }
    return merged;
}

}  // namespace

SymbolicSet SymbolicSet::bottom(UniversePtr u) {
    return SymbolicSet(std::move(u));
}

SymbolicSet SymbolicSet::top(UniversePtr u) {
    SymbolicSet s(u);
    s.cells_.push_back({Cube(u), Zone::universe(u)});
    return s;
}

SymbolicSet SymbolicSet::of_cell(Cell c) {
    SymbolicSet s(c.zone.universe_ptr());
    if (!c.zone.is_empty()) s.cells_.push_back(std::move(c));
    return s;
}

SymbolicSet SymbolicSet::of_zone(UniversePtr u, Zone z) {
    return of_cell({Cube(u), std::move(z)});
}

SymbolicSet SymbolicSet::of_cells(UniversePtr u, std::vector<Cell> cs) {
    SymbolicSet s(std::move(u));
    s.cells_ = std::move(cs);
    s.reduce();
    return s;
}

bool SymbolicSet::is_empty() const {
    for (const auto& c : cells_)
        if (!c.zone.is_empty()) return false;
    return true;
}

void SymbolicSet::union_with(const SymbolicSet& other) {
    cells_.insert(cells_.end(), other.cells_.begin(), other.cells_.end());
    reduce();
}

SymbolicSet SymbolicSet::intersect(const SymbolicSet& other) const {
    SymbolicSet out(u_);
    for (const auto& a : cells_)
        for (const auto& b : other.cells_) {
            if (!a.cube.intersects(b.cube)) continue;
            Cube c = a.cube;
            c.intersect_with(b.cube);
            Zone z = a.zone.intersected(b.zone);
            if (z.is_empty()) continue;
            out.cells_.push_back({std::move(c), std::move(z)});
        }
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::negate() const {
    // Chip each cell out of the full space rather than multiplying per-cell
    // complements, which degenerates on sets with many cells.
    return top(u_).difference(*this);
}

namespace {

/// a minus b, as a disjoint list of cells: peel one negated atom of b at a
/// time while conjoining the atoms already processed.
std::vector<Cell> subtract_cell(const Cell& a, const Cell& b,
                                const UniversePtr& u) {
    if (!a.cube.intersects(b.cube)) return {a};
    if (a.zone.intersected(b.zone).is_empty()) return {a};
    std::vector<Cell> out;
    Cell cur = a;
    for (std::size_t k = 0; k < b.cube.size(); ++k) {
        if (!b.cube.fixes(k)) continue;
        const bool v = b.cube.fixed_value(k);
        if (cur.cube.fixes(k)) {
            // Same polarity (opposite was excluded by the overlap check).
            continue;
        }
        Cell piece = cur;
        piece.cube.set(k, !v);
        out.push_back(std::move(piece));
        cur.cube.set(k, v);
    }
    for (const auto& dc : b.zone.minimal_constraints()) {
        Cell piece = cur;
        piece.zone.constrain(dc.j, dc.i, dc.bound.complement());
        if (!piece.zone.is_empty()) out.push_back(std::move(piece));
        cur.zone.constrain(dc.i, dc.j, dc.bound);
        if (cur.zone.is_empty()) break;
    }
    (void)u;
    return out;
}

}  // namespace

SymbolicSet SymbolicSet::difference(const SymbolicSet& other) const {
    SymbolicSet out = *this;
    out.reduce();
    for (const auto& b : other.cells_) {
        if (out.cells_.empty()) break;
        std::vector<Cell> next;
        for (const auto& a : out.cells_) {
            auto pieces = subtract_cell(a, b, u_);
            next.insert(next.end(), std::make_move_iterator(pieces.begin()),
                        std::make_move_iterator(pieces.end()));
        }
        out.cells_ = std::move(next);
        out.reduce();
    }
    return out;
}

bool SymbolicSet::includes(const SymbolicSet& other) const {
    for (const auto& b : other.cells_) {
        if (b.zone.is_empty()) continue;
        std::vector<Cell> pieces{b};
        for (const auto& a : cells_) {
            std::vector<Cell> next;
            for (const auto& p : pieces) {
                auto sub = subtract_cell(p, a, u_);
                next.insert(next.end(), std::make_move_iterator(sub.begin()),
                            std::make_move_iterator(sub.end()));
            }
            pieces = std::move(next);
            if (pieces.empty()) break;
        }
        for (const auto& p : pieces)
            if (!p.zone.is_empty()) return false;
    }
    return true;
}

SymbolicSet SymbolicSet::eliminate(const std::vector<std::size_t>& props,
                                   const std::vector<std::size_t>& vars) const {
    SymbolicSet out(u_);
    for (const auto& cell : cells_) {
        if (cell.zone.is_empty()) continue;
        Cell c = cell;
        for (auto k : props) c.cube.clear(k);
        for (auto v : vars) c.zone.free_var(v);
        out.cells_.push_back(std::move(c));
    }
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::shifted(std::size_t disp_var) const {
    SymbolicSet out(u_);
    for (const auto& cell : cells_) {
        if (cell.zone.is_empty()) continue;
        Cell c = cell;
        c.zone.shift_vars(disp_var);
        out.cells_.push_back(std::move(c));
    }
    out.reduce();
    return out;
}

namespace {

// Shared core of path_constraint and past_constraint: no instant of the
// segment between 0 and the displacement may land in the complement. The
// inner witness offset rides on the second auxiliary displacement variable.
SymbolicSet segment_constraint(const SymbolicSet& s, std::size_t disp_var,
                               bool past) {
    const auto& u = s.universe_ptr();
    const std::size_t t2 = u->neg_t2();
    assert(disp_var != t2);
    SymbolicSet violated = s.negate().shifted(t2);
    if (getenv("TSIM_DEBUG"))
        fprintf(stderr, "    seg: s=%zu viol=%zu\n", s.cell_count(),
                violated.cell_count());

    Zone seg = Zone::universe(u);
    if (past) {
        seg.constrain(0, t2, Bound::zero());         // t2 >= 0
        seg.constrain(t2, disp_var, Bound::zero());  // t2 <= disp
    } else {
        // disp carries a negated delay: -delay <= t2 <= 0.
        seg.constrain(t2, 0, Bound::zero());
        seg.constrain(disp_var, t2, Bound::zero());
    }
    SymbolicSet bad = violated.intersect(SymbolicSet::of_zone(u, seg))
                          .eliminate({}, {t2});
    SymbolicSet ok = bad.negate();
    if (getenv("TSIM_DEBUG"))
        fprintf(stderr, "    seg: bad=%zu ok=%zu\n", bad.cell_count(),
                ok.cell_count());

    Zone sign = Zone::universe(u);
    if (past)
        sign.constrain(0, disp_var, Bound::zero());  // disp >= 0
    else
        sign.constrain(disp_var, 0, Bound::zero());  // disp <= 0, delay >= 0
    return ok.intersect(SymbolicSet::of_zone(u, std::move(sign)));
}

}  // namespace

SymbolicSet SymbolicSet::path_constraint(std::size_t disp_var) const {
    return segment_constraint(*this, disp_var, false);
}

SymbolicSet SymbolicSet::past_constraint(std::size_t disp_var) const {
    return segment_constraint(*this, disp_var, true);
}

SymbolicSet SymbolicSet::assign_precondition(
    const std::vector<std::size_t>& reset_vars,
    const std::vector<std::pair<std::size_t, bool>>& prop_sets) const {
    SymbolicSet out(u_);
    for (const auto& cell : cells_) {
        Cube c = cell.cube;
        bool feasible = true;
        for (auto [k, v] : prop_sets) {
            if (c.fixes(k) && c.fixed_value(k) != v) {
                feasible = false;
                break;
            }
            c.clear(k);
        }
        if (!feasible) continue;
        Zone z = cell.zone;
        for (auto r : reset_vars) z.constrain_eq(r, 0, 0);
        if (z.is_empty()) continue;
        for (auto r : reset_vars) z.free_var(r);
        out.cells_.push_back({std::move(c), std::move(z)});
    }
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::assign_image(
    const std::vector<std::size_t>& reset_vars,
    const std::vector<std::pair<std::size_t, bool>>& prop_sets) const {
    SymbolicSet out(u_);
    for (const auto& cell : cells_) {
        if (cell.zone.is_empty()) continue;
        Cube c = cell.cube;
        for (auto [k, v] : prop_sets) c.set(k, v);
        Zone z = cell.zone;
        for (auto r : reset_vars) {
            z.free_var(r);
            z.constrain_eq(r, 0, 0);
        }
        out.cells_.push_back({std::move(c), std::move(z)});
    }
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::replace_z() const {
    SymbolicSet out(u_);
    for (const auto& cell : cells_) {
        if (cell.zone.is_empty()) continue;
        Cell c = cell;
        c.zone.merge_var(u_->aux_z(), u_->neg_delta());
        out.cells_.push_back(std::move(c));
    }
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::extrapolated(std::int64_t max_const) const {
    SymbolicSet out = *this;
    for (auto& cell : out.cells_) cell.zone.widen(max_const);
    out.reduce();
    return out;
}

SymbolicSet SymbolicSet::constrained(std::size_t i, std::size_t j,
                                     Bound b) const {
    SymbolicSet out = *this;
    for (auto& cell : out.cells_) cell.zone.constrain(i, j, b);
    out.reduce();
    return out;
}

bool SymbolicSet::contains(const std::vector<bool>& props,
                           const std::vector<Rational>& point) const {
    for (const auto& cell : cells_)
        if (cell.cube.eval(props) && cell.zone.contains(point)) return true;
    return false;
}

void SymbolicSet::reduce() {
    std::erase_if(cells_, [](const Cell& c) { return c.zone.is_empty(); });

    auto by_cube_zone = [](const Cell& a, const Cell& b) {
        if (a.cube < b.cube) return true;
        if (b.cube < a.cube) return false;
        return compare_zones(a.zone, b.zone) < 0;
    };
    auto by_zone_cube = [](const Cell& a, const Cell& b) {
        const int c = compare_zones(a.zone, b.zone);
        if (c != 0) return c < 0;
        return a.cube < b.cube;
    };

    std::sort(cells_.begin(), cells_.end(), by_cube_zone);
    cells_.erase(std::unique(cells_.begin(), cells_.end(),
                             [](const Cell& a, const Cell& b) {
                                 return a.cube == b.cube &&
                                        compare_zones(a.zone, b.zone) == 0;
                             }),
                 cells_.end());

    // Alternate the two merge passes until neither finds a pair (a cube
    // merge can expose a new zone merge and vice versa). Each success
    // removes a cell, so this terminates.
    std::size_t budget = kMergeBudget;
    while (cells_.size() > 1 && budget > 0) {
        bool any = merge_zone_fragments(cells_, budget);
        std::sort(cells_.begin(), cells_.end(), by_zone_cube);
        any = merge_cube_fragments(cells_, budget) || any;
        std::sort(cells_.begin(), cells_.end(), by_cube_zone);
        if (!any) break;
    }

    if (cells_.size() > kSubsumptionCap) return;
    std::vector<bool> dead(cells_.size(), false);
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (dead[i]) continue;
        for (std::size_t j = 0; j < cells_.size(); ++j) {
            if (i == j || dead[j]) continue;
            if (cells_[j].cube.subsumes(cells_[i].cube) &&
                cells_[i].zone.subset_of(cells_[j].zone)) {
                dead[i] = true;
                break;
            }
        }
    }
    std::size_t w = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (dead[i]) continue;
        if (w != i) cells_[w] = std::move(cells_[i]);
        ++w;
    }
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(w),
                 cells_.end());
}

std::string SymbolicSet::to_string(bool multiline) const {
    if (cells_.empty()) return "false";
    std::ostringstream os;
    bool first = true;
    for (const auto& cell : cells_) {
        if (cell.zone.is_empty()) continue;
        std::string cs = cell.cube.to_string(*u_);
        std::string zs = cell.zone.to_string();
        std::string body;
        if (cs.empty())
            body = zs;
        else if (zs == "true")
            body = cs;
        else
            body = cs + " && " + zs;
        if (!first) os << (multiline ? " ||\n" : " || ");
        os << "(" << body << ")";
        first = false;
    }
    if (first) return "false";
    return os.str();
}

}  // namespace tsim
