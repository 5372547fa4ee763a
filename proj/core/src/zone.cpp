#include "tsim/zone.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace tsim {

Zone::Zone(UniversePtr u, bool make_empty)
    : u_(std::move(u)), n_(u_->var_count()), mat_(n_ * n_, Bound::infinity()) {
    for (std::size_t i = 0; i < n_; ++i) m(i, i) = Bound::zero();
    if (make_empty) {
        empty_ = true;
    } else {
        // Clocks are nonnegative: 0 - x <= 0.
        for (std::size_t i = 1; i < n_; ++i)
            if (u_->var_kind(i) == VarKind::Clock) m(0, i) = Bound::zero();
    }
}

Zone Zone::universe(UniversePtr u) { return Zone(std::move(u), false); }

Zone Zone::empty(UniversePtr u) { return Zone(std::move(u), true); }

void Zone::constrain(std::size_t i, std::size_t j, Bound b) {
    assert(i < n_ && j < n_ && i != j);
    if (empty_) return;
    if (b < m(i, j)) {
        m(i, j) = b;
        closed_ = false;
    }
}

void Zone::close() const {
    if (closed_ || empty_) return;
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t i = 0; i < n_; ++i) {
            const Bound ik = mat_[i * n_ + k];
            if (ik.is_infinite()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                const Bound kj = mat_[k * n_ + j];
                if (kj.is_infinite()) continue;
                Bound& ij = mat_[i * n_ + j];
                const Bound via = ik + kj;
                if (via < ij) ij = via;
            }
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const Bound d = mat_[i * n_ + i];
        if (d.value < 0 || (d.value == 0 && d.strict)) {
            empty_ = true;
            break;
        }
    }
    closed_ = true;
}

bool Zone::is_empty() const {
    close();
    return empty_;
}

Bound Zone::at(std::size_t i, std::size_t j) const {
    close();
    assert(!empty_);
    return m(i, j);
}

bool Zone::subset_of(const Zone& other) const {
    if (is_empty()) return true;
    if (other.is_empty()) return false;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (!(m(i, j) <= other.m(i, j))) return false;
    return true;
}

bool Zone::contains(const std::vector<Rational>& point) const {
    if (is_empty()) return false;
    assert(point.size() == n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            if (!m(i, j).admits(point[i] - point[j])) return false;
        }
    return true;
}

void Zone::intersect_with(const Zone& other) {
    assert(n_ == other.n_);
    if (empty_) return;
    if (other.empty_) {
        empty_ = true;
        return;
    }
    for (std::size_t i = 0; i < n_ * n_; ++i)
        if (other.mat_[i] < mat_[i]) {
            mat_[i] = other.mat_[i];
            closed_ = false;
        }
}

bool Zone::try_union_with(const Zone& other) {
    assert(n_ == other.n_);
    close();
    other.close();
    assert(!empty_ && !other.empty_);
    // The convex hull of two zones is the entrywise weaker matrix, and the
    // union is convex exactly when the hull adds no points. A hull point
    // outside both zones violates one entry of each, so it suffices to ask,
    // for every pair of entries where one input is strictly tighter than
    // the hull, whether the hull admits a point beyond both: flipping the
    // two entries is infeasible exactly when they close a negative cycle
    // through hull paths. Using the hull's raw entries instead of closed
    // ones only overestimates those paths, which can reject a mergeable
    // pair but never commits a non-convex union.
    Zone hull = *this;
    bool grew = false;
    for (std::size_t i = 0; i < n_ * n_; ++i)
        if (hull.mat_[i] < other.mat_[i]) {
            hull.mat_[i] = other.mat_[i];
            grew = true;
        }
    if (!grew) return true;  // other is already inside this zone

    auto negative = [](const Bound& b) {
        return b.value < 0 || (b.value == 0 && b.strict);
    };
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (!(m(i, j) < hull.m(i, j))) continue;
            const Bound w1 = m(i, j).complement();  // enters at (j, i)
            for (std::size_t k = 0; k < n_; ++k)
                for (std::size_t l = 0; l < n_; ++l) {
                    if (!(other.m(k, l) < hull.m(k, l))) continue;
                    const Bound w2 = other.m(k, l).complement();  // (l, k)
                    // The only simple cycle through both flipped entries:
                    // j -> i -> l -> k -> j.
                    if (!negative(w1 + hull.m(i, l) + w2 + hull.m(k, j)))
                        return false;
                }
        }
    hull.closed_ = false;
    *this = std::move(hull);
    return true;
}

void Zone::free_var(std::size_t i) {
    close();
    if (empty_) return;
    const bool is_clock = u_->var_kind(i) == VarKind::Clock;
    for (std::size_t k = 0; k < n_; ++k) {
        if (k == i) continue;
        // In canonical form the tightest bound on x_k - x_i after freeing
        // goes through 0 when the clock domain is restored, and disappears
        // otherwise.
        m(k, i) = is_clock ? m(k, 0) : Bound::infinity();
        m(i, k) = Bound::infinity();
    }
    if (is_clock) m(0, i) = Bound::zero();
    // Rows and columns were rewritten consistently with the closure, so the
    // matrix stays canonical.
}

void Zone::shift_vars(std::size_t d) {
    close();
    if (empty_) return;
    assert(u_->var_kind(d) == VarKind::Displacement);
#ifndef NDEBUG
    for (std::size_t k = 0; k < n_; ++k) {
        if (k == d) continue;
        assert(m(d, k).is_infinite() && m(k, d).is_infinite() &&
               "shift_vars: displacement variable already constrained");
    }
#endif
    // The result keeps the domain defaults of the universe: the points of
    // the shifted set are still ordinary valuations. The displaced
    // constraints land on the rows and columns of d.
    Zone out(u_, false);
    for (std::size_t i = 0; i < n_; ++i) {
        const bool si = i != 0 && u_->shifts_with_time(i);
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            const Bound b = m(i, j);
            if (b.is_infinite()) continue;
            const bool sj = j != 0 && u_->shifts_with_time(j);
            if (si && sj) {
                out.constrain(i, j, b);  // differences are shift-invariant
            } else if (si && j == 0) {
                out.constrain(i, d, b);  // x <= c becomes x - d <= c
            } else if (sj && i == 0) {
                out.constrain(d, j, b);  // -x <= c becomes d - x <= c
            } else if (!si && !sj) {
                out.constrain(i, j, b);  // untouched variables keep bounds
            } else {
                // A constraint linking a shifted and a fixed variable other
                // than the reference has no DBM image; callers must not
                // produce such zones.
                assert(false && "shift_vars: mixed constraint");
            }
        }
    }
    *this = std::move(out);
}

void Zone::merge_var(std::size_t src, std::size_t dst) {
    close();
    if (empty_) return;
    // Identifying src with dst takes entrywise minima of their rows and
    // columns under closure; freeing src afterwards leaves the merged
    // constraints on dst.
    constrain_eq(src, dst, 0);
    close();
    free_var(src);
}

Zone Zone::time_closure() const {
    close();
    assert(!empty_);
    Zone out = *this;
    bool changed = false;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            const bool varies =
                u_->shifts_with_time(i) != u_->shifts_with_time(j);
            Bound& b = out.m(i, j);
            if (varies && b.strict && !b.is_infinite()) {
                b.strict = false;
                changed = true;
            }
        }
    if (changed) out.closed_ = false;
    return out;
}

void Zone::widen(std::int64_t c) {
    close();
    if (empty_) return;
    // One pass over the canonical matrix: every kept constraint then uses a
    // constant of magnitude at most c, so the result is one of finitely many
    // sets, even though re-closing may tighten derived entries past -c.
    bool changed = false;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            Bound& b = m(i, j);
            if (b.is_infinite()) continue;
            if (b.value > c) {
                b = Bound::infinity();
                changed = true;
            } else if (b.value < -c) {
                b = Bound::strictly(-c);
                changed = true;
            }
        }
    if (changed) {
        closed_ = false;
        close();
    }
}

// ── Minimal constraint form ──────────────────────────────────────────────
//
// Classical reduction of a canonical DBM: variables whose pairwise
// difference is exact form equality classes, chained in a cycle; between
// class representatives an edge is kept only when no third representative
// implies it. Domain defaults are dropped.

std::vector<DiffConstraint> Zone::minimal_constraints() const {
    close();
    assert(!empty_);
    std::vector<DiffConstraint> out;

    // Equality classes: i ~ j when x_i - x_j is an exact constant.
    std::vector<std::size_t> cls(n_);
    std::iota(cls.begin(), cls.end(), 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const Bound a = m(i, j), b = m(j, i);
            if (!a.is_infinite() && !b.is_infinite() && !a.strict &&
                !b.strict && a.value + b.value == 0) {
                cls[i] = cls[j];
                break;
            }
        }

    // Chain each class of size > 1 in a cycle of exact differences.
    for (std::size_t r = 0; r < n_; ++r) {
        if (cls[r] != r) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n_; ++i)
            if (cls[i] == r) members.push_back(i);
        for (std::size_t k = 0; k + 1 < members.size(); ++k)
            out.push_back({members[k], members[k + 1],
                           m(members[k], members[k + 1])});
        if (members.size() > 1)
            out.push_back({members.back(), members.front(),
                           m(members.back(), members.front())});
    }

    // Edges between representatives, dropping implied ones.
    for (std::size_t i = 0; i < n_; ++i) {
        if (cls[i] != i) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (cls[j] != j || i == j) continue;
            const Bound b = m(i, j);
            if (b.is_infinite()) continue;
            // Domain default: clock >= 0.
            if (i == 0 && u_->var_kind(j) == VarKind::Clock &&
                b == Bound::zero())
                continue;
            bool implied = false;
            for (std::size_t k = 0; k < n_ && !implied; ++k) {
                if (cls[k] != k || k == i || k == j) continue;
                if (m(i, k) + m(k, j) <= b) implied = true;
            }
            if (!implied) out.push_back({i, j, b});
        }
    }
    return out;
}

std::string Zone::to_string() const {
    if (is_empty()) return "false";
    const auto cs = minimal_constraints();
    if (cs.empty()) return "true";

    // Group the surviving constraints per variable pair so bounds print as
    // chains in the surface syntax: "3 < x2 <= 5", "x1 - x2 = 2".
    struct Bounds {
        std::optional<Bound> upper;  // expr - ... <= upper
        std::optional<Bound> lower;  // mirrored entry: lower on expr
    };
    // Key: (i, j) with i < j; expr is var_i - var_j (or plain var when one
    // side is the reference).
    std::vector<std::tuple<std::size_t, std::size_t, Bounds>> groups;
    auto slot = [&](std::size_t i, std::size_t j) -> Bounds& {
        for (auto& [gi, gj, b] : groups)
            if (gi == i && gj == j) return b;
        groups.emplace_back(i, j, Bounds{});
        return std::get<2>(groups.back());
    };
    for (const auto& c : cs) {
        if (c.i < c.j)
            slot(c.i, c.j).upper = c.bound;
        else
            slot(c.j, c.i).lower = c.bound;
    }

    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& s) {
        if (!first) os << " && ";
        os << s;
        first = false;
    };
    auto num = [](std::int64_t v) { return std::to_string(v); };

    for (const auto& [i, j, b] : groups) {
        // expr = var_i - var_j; with i == 0 the expression is -var_j, so
        // print against var_j with everything mirrored.
        std::string expr;
        bool mirrored = false;
        if (i == 0) {
            expr = u_->var_name(j);
            mirrored = true;
        } else if (j == 0) {
            expr = u_->var_name(i);
        } else {
            expr = u_->var_name(i) + " - " + u_->var_name(j);
        }
        // up: expr <= up; lo: expr >= -lo (from the mirrored entry).
        std::optional<Bound> up = b.upper, lo = b.lower;
        if (mirrored) std::swap(up, lo);

        if (up && lo && !up->strict && !lo->strict &&
            up->value + lo->value == 0) {
            emit(expr + " = " + num(up->value));
            continue;
        }
        if (up && lo) {
            emit(num(-lo->value) + (lo->strict ? " < " : " <= ") + expr +
                 (up->strict ? " < " : " <= ") + num(up->value));
            continue;
        }
        if (up) emit(expr + (up->strict ? " < " : " <= ") + num(up->value));
        if (lo) emit(num(-lo->value) + (lo->strict ? " < " : " <= ") + expr);
    }
    std::string s = os.str();
    return s.empty() ? "true" : s;
}

}  // namespace tsim
