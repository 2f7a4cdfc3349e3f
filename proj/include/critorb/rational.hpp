#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace critorb {

// Small exact fraction for growth exponents q = m0 / d^n0 and measure masses.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { reduce(); }
    explicit Rational(long long n) : num(n), den(1) {}

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool positive() const { return num > 0; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace critorb
