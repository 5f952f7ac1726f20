#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace gmq {

// Exact small rational, used for pole locations t = m - 1/2 and
// t = (n + 2m)/(2d) and the expansion exponents derived from them.
// Magnitudes stay tiny (numerators below a few hundred), so no overflow
// handling is needed.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    double value() const { return double(num) / double(den); }
    bool is_integer() const { return den == 1; }

    friend Rat operator+(Rat a, Rat b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rat operator-(Rat a, Rat b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rat operator*(Rat a, Rat b) { return {a.num * b.num, a.den * b.den}; }
    friend Rat operator*(std::int64_t k, Rat a) { return {k * a.num, a.den}; }
    friend bool operator==(const Rat&, const Rat&) = default;
    friend std::strong_ordering operator<=>(Rat a, Rat b) {
        return a.num * b.den <=> b.num * a.den;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

} // namespace gmq
