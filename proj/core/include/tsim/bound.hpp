// ============================================================================
// tsim/bound.hpp — DBM bound values
// ============================================================================
//
// A Bound is one entry of a difference bound matrix: an upper bound on a
// difference x_i - x_j, either strict (<) or weak (<=), or +infinity when
// the difference is unconstrained.
//
// The ordering used throughout is "tighter than": a bound is smaller when it
// admits fewer valuations. (3, <) is tighter than (3, <=), and any finite
// bound is tighter than infinity.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "tsim/rational.hpp"

namespace tsim {

struct Bound {
    // Sentinel kept far from the int64 edge so sums of bounds never wrap.
    static constexpr std::int64_t kInf =
        std::numeric_limits<std::int64_t>::max() / 4;

    std::int64_t value = kInf;
    bool strict = false;

    static constexpr Bound infinity() { return Bound{kInf, false}; }
    static constexpr Bound weak(std::int64_t v) { return Bound{v, false}; }
    static constexpr Bound strictly(std::int64_t v) { return Bound{v, true}; }
    /// The zero bound (<= 0), used on diagonals and for equalities.
    static constexpr Bound zero() { return Bound{0, false}; }

    constexpr bool is_infinite() const { return value >= kInf; }

    // Encode so that integer comparison is the "tighter than" order:
    // (v, <) encodes below (v, <=), infinity encodes above everything.
    constexpr std::int64_t encoded() const {
        if (is_infinite()) return std::numeric_limits<std::int64_t>::max();
        return value * 2 + (strict ? 0 : 1);
    }

    friend constexpr bool operator==(const Bound& a, const Bound& b) {
        if (a.is_infinite() && b.is_infinite()) return true;
        return a.value == b.value && a.strict == b.strict;
    }
    friend constexpr bool operator!=(const Bound& a, const Bound& b) {
        return !(a == b);
    }
    friend constexpr bool operator<(const Bound& a, const Bound& b) {
        return a.encoded() < b.encoded();
    }
    friend constexpr bool operator<=(const Bound& a, const Bound& b) {
        return a.encoded() <= b.encoded();
    }

    friend constexpr Bound min(const Bound& a, const Bound& b) {
        return a <= b ? a : b;
    }

    /// Bound addition, used for the triangle step of canonicalization.
    /// The sum of a strict and a weak bound is strict.
    friend constexpr Bound operator+(const Bound& a, const Bound& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Bound{a.value + b.value, a.strict || b.strict};
    }

    /// The complement bound: not (x - y < c) is (y - x <= -c), and
    /// not (x - y <= c) is (y - x < -c). The result goes into the mirrored
    /// matrix entry. Must not be called on infinity.
    constexpr Bound complement() const { return Bound{-value, !strict}; }

    /// Does a difference value d satisfy this bound?
    constexpr bool admits(const Rational& d) const {
        if (is_infinite()) return true;
        return strict ? d < Rational(value) : d <= Rational(value);
    }

    std::string to_string() const {
        if (is_infinite()) return "inf";
        return (strict ? "<" : "<=") + std::string(" ") + std::to_string(value);
    }
};

}  // namespace tsim
