// ============================================================================
// tsim/rational.hpp — Exact rational arithmetic
// ============================================================================
//
// Small exact rationals over int64. Used wherever a representative point of
// a zone or region has to be evaluated exactly (region representatives sit
// at half-integer or finer fractional coordinates) and for constant scaling.
//
// Values are kept normalized: positive denominator, gcd(num, den) == 1.
// Overflow is not defended against beyond the int64 range; model constants
// are small and every computation path keeps denominators tiny.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace tsim {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        normalize();
    }

    constexpr void normalize() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    constexpr bool is_integer() const { return den == 1; }

    /// Largest integer <= value.
    constexpr std::int64_t floor() const {
        if (num >= 0) return num / den;
        return -((-num + den - 1) / den);
    }

    constexpr Rational frac() const { return *this - Rational(floor()); }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend constexpr Rational operator-(Rational a, Rational b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend constexpr Rational operator*(Rational a, Rational b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend constexpr Rational operator/(Rational a, Rational b) {
        return Rational(a.num * b.den, a.den * b.num);
    }
    constexpr Rational operator-() const { return Rational(-num, den); }

    friend constexpr bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend constexpr bool operator!=(const Rational& a, const Rational& b) {
        return !(a == b);
    }
    friend constexpr bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend constexpr bool operator<=(const Rational& a, const Rational& b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend constexpr bool operator>(const Rational& a, const Rational& b) {
        return b < a;
    }
    friend constexpr bool operator>=(const Rational& a, const Rational& b) {
        return b <= a;
    }

    std::string to_string() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }
};

}  // namespace tsim
