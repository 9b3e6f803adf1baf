#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace redlab {

// Exact rational on 64-bit words. Intermediates go through __int128 and
// overflow past 64 bits throws; inputs in this project are small (study
// coordinates, density numerators bounded by level sizes).
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static std::int64_t clamp128(__int128 v) {
        if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
            throw std::overflow_error("rational arithmetic overflow");
        return static_cast<std::int64_t>(v);
    }

    static Rat make128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        Rat r;
        r.num = clamp128(n);
        r.den = clamp128(d);
        if (r.num == 0) r.den = 1;
        return r;
    }

    friend Rat operator+(const Rat& x, const Rat& y) {
        return make128(__int128(x.num) * y.den + __int128(y.num) * x.den,
                       __int128(x.den) * y.den);
    }
    friend Rat operator-(const Rat& x, const Rat& y) {
        return make128(__int128(x.num) * y.den - __int128(y.num) * x.den,
                       __int128(x.den) * y.den);
    }
    friend Rat operator*(const Rat& x, const Rat& y) {
        return make128(__int128(x.num) * y.num, __int128(x.den) * y.den);
    }
    friend Rat operator/(const Rat& x, const Rat& y) {
        if (y.num == 0) throw std::domain_error("division by zero rational");
        return make128(__int128(x.num) * y.den, __int128(x.den) * y.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rat& x, const Rat& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
    friend bool operator<(const Rat& x, const Rat& y) {
        return __int128(x.num) * y.den < __int128(y.num) * x.den;
    }
    friend bool operator<=(const Rat& x, const Rat& y) { return !(y < x); }
    friend bool operator>(const Rat& x, const Rat& y) { return y < x; }
    friend bool operator>=(const Rat& x, const Rat& y) { return !(x < y); }

    double to_double() const { return double(num) / double(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace redlab
