#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "mp/errors.hpp"

namespace mp {

// Exact rational on int64 with __int128 intermediates.  Used for the exact
// combinatorial parts (divisor-sum kernels, the C_{k,Delta} constant, Hecke
// coefficient combinations) so that only the transcendental factors live in
// floating point.  Overflow past int64 after reduction is an error, never a
// silent wrap.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw validation_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw validation_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const __int128 mx = INT64_MAX;
        if (n > mx || n < -mx || d > mx)
            throw numerical_error("Rational: overflow past 64 bits after reduction");
        Rational r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return from128((__int128)x.num * y.den + (__int128)y.num * x.den,
                       (__int128)x.den * y.den);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return from128((__int128)x.num * y.den - (__int128)y.num * x.den,
                       (__int128)x.den * y.den);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return from128((__int128)x.num * y.num, (__int128)x.den * y.den);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num == 0) throw validation_error("Rational: division by zero");
        return from128((__int128)x.num * y.den, (__int128)x.den * y.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }
};

// r^n for small non-negative n.
inline Rational rat_pow(Rational r, int n) {
    Rational out(1);
    for (int i = 0; i < n; ++i) out = out * r;
    return out;
}

} // namespace mp
