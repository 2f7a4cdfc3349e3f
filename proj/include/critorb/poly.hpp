#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "critorb/config.hpp"
#include "critorb/errors.hpp"
#include "critorb/gauss_rational.hpp"

namespace critorb {

using Cplx = std::complex<double>;

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Cplx> {
    static constexpr bool exact = false;
    static double mag(const Cplx& v) { return std::abs(v); }
    static bool is_zero(const Cplx& v) { return v == Cplx{0.0, 0.0}; }
    static Cplx from_int(long long n) { return Cplx(static_cast<double>(n), 0.0); }
    static Cplx div_int(const Cplx& v, long long n) { return v / static_cast<double>(n); }
};

template <>
struct scalar_traits<GaussRat> {
    static constexpr bool exact = true;
    static double mag(const GaussRat& v) { return v.approx_abs(); }
    static bool is_zero(const GaussRat& v) { return v.is_zero(); }
    static GaussRat from_int(long long n) { return GaussRat(n); }
    static GaussRat div_int(const GaussRat& v, long long n) {
        return {v.re / n, v.im / n};
    }
};

// Dense polynomial in one variable (t) over K. Zero polynomial has empty
// coefficient vector and degree -1.
template <class K>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(K v) { return Poly(std::vector<K>{std::move(v)}); }
    static Poly variable() {
        return Poly(std::vector<K>{scalar_traits<K>::from_int(0), scalar_traits<K>::from_int(1)});
    }

    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(std::size_t j) const {
        return j < c_.size() ? c_[j] : K{};
    }
    K leading() const { return c_.empty() ? K{} : c_.back(); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : c_) m = std::max(m, scalar_traits<K>::mag(v));
        return m;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<K> r = a.c_;
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K{});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const K& s) {
        std::vector<K> r = a.c_;
        for (auto& v : r) v = v * s;
        return Poly(std::move(r));
    }

    Poly div_int(long long n) const {
        std::vector<K> r = c_;
        for (auto& v : r) v = scalar_traits<K>::div_int(v, n);
        return Poly(std::move(r));
    }

    K operator()(const K& x) const {
        K acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1);
        for (std::size_t j = 1; j < c_.size(); ++j)
            r[j - 1] = c_[j] * scalar_traits<K>::from_int(static_cast<long long>(j));
        return Poly(std::move(r));
    }

  private:
    void trim() {
        if constexpr (scalar_traits<K>::exact) {
            while (!c_.empty() && scalar_traits<K>::is_zero(c_.back())) c_.pop_back();
        } else {
            double tol = config::kTrimRelTol * max_abs();
            while (!c_.empty() && scalar_traits<K>::mag(c_.back()) <= tol) c_.pop_back();
        }
    }

    std::vector<K> c_;
};

template <class K>
bool poly_equal(const Poly<K>& a, const Poly<K>& b, double rel_tol = config::kTPolyRelTol) {
    if constexpr (scalar_traits<K>::exact) {
        (void)rel_tol;
        if (a.degree() != b.degree()) return false;
        for (std::size_t j = 0; j < a.coeffs().size(); ++j)
            if (!(a.coeffs()[j] == b.coeffs()[j])) return false;
        return true;
    } else {
        double scale = 1.0 + std::max(a.max_abs(), b.max_abs());
        std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
        for (std::size_t j = 0; j < n; ++j)
            if (scalar_traits<K>::mag(a.coeff(j) - b.coeff(j)) > rel_tol * scale) return false;
        return true;
    }
}

inline Poly<Cplx> to_numeric(const Poly<GaussRat>& p) {
    std::vector<Cplx> c(p.coeffs().size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = p.coeffs()[j].to_complex();
    return Poly<Cplx>(std::move(c));
}

// Polynomial in z whose coefficients are Poly<K> in t.
template <class K>
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Poly<K>> zc) : zc_(std::move(zc)) { trim(); }

    static ZPoly constant(Poly<K> p) { return ZPoly(std::vector<Poly<K>>{std::move(p)}); }
    static ZPoly variable() {
        return ZPoly(std::vector<Poly<K>>{Poly<K>::zero(), Poly<K>::constant(scalar_traits<K>::from_int(1))});
    }

    long long zdegree() const { return static_cast<long long>(zc_.size()) - 1; }
    bool is_zero() const { return zc_.empty(); }
    const std::vector<Poly<K>>& zcoeffs() const { return zc_; }
    const Poly<K>& zcoeff(std::size_t j) const {
        static const Poly<K> kZero;
        return j < zc_.size() ? zc_[j] : kZero;
    }

    bool is_monic_centered() const {
        long long d = zdegree();
        if (d < 1) return false;
        const Poly<K>& top = zc_[static_cast<std::size_t>(d)];
        if (top.degree() != 0) return false;
        if (scalar_traits<K>::mag(top.coeff(0) - scalar_traits<K>::from_int(1)) > 1e-14) return false;
        if (d >= 1 && !zc_[static_cast<std::size_t>(d - 1)].is_zero()) return false;
        return true;
    }

    // max_j deg_t of the coefficients below the leading one
    long long max_lower_tdeg() const {
        long long m = -1;
        for (std::size_t j = 0; j + 1 < zc_.size(); ++j) m = std::max(m, zc_[j].degree());
        return m;
    }

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
        std::vector<Poly<K>> r(std::max(a.zc_.size(), b.zc_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.zcoeff(i) + b.zcoeff(i);
        return ZPoly(std::move(r));
    }
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
        std::vector<Poly<K>> r(std::max(a.zc_.size(), b.zc_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.zcoeff(i) - b.zcoeff(i);
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
        if (a.is_zero() || b.is_zero()) return ZPoly();
        std::vector<Poly<K>> r(a.zc_.size() + b.zc_.size() - 1);
        for (std::size_t i = 0; i < a.zc_.size(); ++i)
            for (std::size_t j = 0; j < b.zc_.size(); ++j)
                r[i + j] = r[i + j] + a.zc_[i] * b.zc_[j];
        return ZPoly(std::move(r));
    }
    friend ZPoly operator*(const ZPoly& a, const Poly<K>& s) {
        std::vector<Poly<K>> r = a.zc_;
        for (auto& v : r) v = v * s;
        return ZPoly(std::move(r));
    }

    // z := p(t); projected t-degree checked against cap
    Poly<K> subst(const Poly<K>& p, long long degree_cap = config::kDegreeCapDefault) const {
        long long proj = -1;
        for (std::size_t j = 0; j < zc_.size(); ++j) {
            if (zc_[j].is_zero()) continue;
            long long term = zc_[j].degree() + static_cast<long long>(j) * std::max<long long>(p.degree(), 0);
            proj = std::max(proj, term);
        }
        if (proj > degree_cap)
            throw DegreeCapExceeded("substitution would reach t-degree " + std::to_string(proj) +
                                    " > cap " + std::to_string(degree_cap));
        Poly<K> acc;
        for (auto it = zc_.rbegin(); it != zc_.rend(); ++it) acc = acc * p + *it;
        return acc;
    }

    // this(inner(z)), i.e. z := inner
    ZPoly compose(const ZPoly& inner) const {
        ZPoly acc;
        for (auto it = zc_.rbegin(); it != zc_.rend(); ++it)
            acc = acc * inner + ZPoly::constant(*it);
        return acc;
    }

    K eval(const K& t, const K& z) const {
        K acc{};
        for (auto it = zc_.rbegin(); it != zc_.rend(); ++it) acc = acc * z + (*it)(t);
        return acc;
    }

    ZPoly derivative_z() const {
        if (zc_.size() <= 1) return ZPoly();
        std::vector<Poly<K>> r(zc_.size() - 1);
        for (std::size_t j = 1; j < zc_.size(); ++j)
            r[j - 1] = zc_[j] * scalar_traits<K>::from_int(static_cast<long long>(j));
        return ZPoly(std::move(r));
    }

  private:
    void trim() {
        while (!zc_.empty() && zc_.back().is_zero()) zc_.pop_back();
    }

    std::vector<Poly<K>> zc_;
};

template <class K>
bool zpoly_equal(const ZPoly<K>& a, const ZPoly<K>& b, double rel_tol = config::kTPolyRelTol) {
    std::size_t n = std::max(a.zcoeffs().size(), b.zcoeffs().size());
    if constexpr (!scalar_traits<K>::exact) {
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max({scale, a.zcoeff(j).max_abs(), b.zcoeff(j).max_abs()});
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t m = std::max(a.zcoeff(j).coeffs().size(), b.zcoeff(j).coeffs().size());
            for (std::size_t i = 0; i < m; ++i)
                if (scalar_traits<K>::mag(a.zcoeff(j).coeff(i) - b.zcoeff(j).coeff(i)) >
                    rel_tol * (1.0 + scale))
                    return false;
        }
        return true;
    } else {
        for (std::size_t j = 0; j < n; ++j)
            if (!poly_equal(a.zcoeff(j), b.zcoeff(j), rel_tol)) return false;
        return true;
    }
}

inline ZPoly<Cplx> to_numeric(const ZPoly<GaussRat>& f) {
    std::vector<Poly<Cplx>> zc(f.zcoeffs().size());
    for (std::size_t j = 0; j < zc.size(); ++j) zc[j] = to_numeric(f.zcoeffs()[j]);
    return ZPoly<Cplx>(std::move(zc));
}

using DPoly = Poly<Cplx>;
using RPoly = Poly<GaussRat>;
using DZPoly = ZPoly<Cplx>;
using RZPoly = ZPoly<GaussRat>;

}  // namespace critorb
