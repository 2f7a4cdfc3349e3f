#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <optional>
#include <string>

namespace critorb {

using BigRat = boost::multiprecision::cpp_rational;

// Exact element of Q(i). Backs the exact coefficient lane: polynomial
// identities (passivity witnesses, symmetry checks, series degree bounds)
// are certified here rather than in floating point.
struct GaussRat {
    BigRat re{0};
    BigRat im{0};

    GaussRat() = default;
    GaussRat(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussRat(long long r) : re(r), im(0) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        BigRat n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    double approx_abs() const { return std::abs(to_complex()); }
};

// Parses "p/q" or "p" (optional sign, decimal digits). Empty result on anything else.
std::optional<BigRat> parse_ratio(const std::string& s);

}  // namespace critorb
