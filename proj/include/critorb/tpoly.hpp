#pragma once

#include <optional>
#include <utility>

#include "critorb/poly.hpp"

namespace critorb {

// Coefficient arithmetic runs on two lanes: IEEE double complex always, and
// exact Gaussian rationals when every input was given as a ratio. Exact
// identities (passivity witnesses, symmetry checks) prefer the exact lane.
struct TPoly {
    DPoly num;
    std::optional<RPoly> exact;

    TPoly() = default;
    explicit TPoly(DPoly n) : num(std::move(n)) {}
    TPoly(DPoly n, RPoly e) : num(std::move(n)), exact(std::move(e)) {}

    static TPoly from_exact(RPoly e) {
        TPoly p;
        p.num = to_numeric(e);
        p.exact = std::move(e);
        return p;
    }
    static TPoly zero() { return TPoly(DPoly::zero()); }
    static TPoly variable() { return from_exact(RPoly::variable()); }
    static TPoly constant(Cplx v) { return TPoly(DPoly::constant(v)); }

    bool has_exact() const { return exact.has_value(); }
    long long degree() const { return exact ? exact->degree() : num.degree(); }
    bool is_zero() const { return exact ? exact->is_zero() : num.is_zero(); }
    Cplx operator()(Cplx t) const { return num(t); }
};

inline TPoly operator+(const TPoly& a, const TPoly& b) {
    TPoly r(a.num + b.num);
    if (a.exact && b.exact) r.exact = *a.exact + *b.exact;
    return r;
}
inline TPoly operator-(const TPoly& a, const TPoly& b) {
    TPoly r(a.num - b.num);
    if (a.exact && b.exact) r.exact = *a.exact - *b.exact;
    return r;
}
inline TPoly operator-(const TPoly& a) {
    TPoly r(-a.num);
    if (a.exact) r.exact = -*a.exact;
    return r;
}
inline TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly r(a.num * b.num);
    if (a.exact && b.exact) r.exact = *a.exact * *b.exact;
    return r;
}

inline bool tpoly_equal(const TPoly& a, const TPoly& b, double rel_tol = config::kTPolyRelTol) {
    if (a.exact && b.exact) return poly_equal(*a.exact, *b.exact);
    return poly_equal(a.num, b.num, rel_tol);
}

struct BiPoly {
    DZPoly num;
    std::optional<RZPoly> exact;

    BiPoly() = default;
    explicit BiPoly(DZPoly n) : num(std::move(n)) {}
    BiPoly(DZPoly n, RZPoly e) : num(std::move(n)), exact(std::move(e)) {}

    static BiPoly from_exact(RZPoly e) {
        BiPoly p;
        p.num = to_numeric(e);
        p.exact = std::move(e);
        return p;
    }

    bool has_exact() const { return exact.has_value(); }
    long long zdegree() const { return num.zdegree(); }
    bool is_monic_centered() const { return num.is_monic_centered(); }
    Cplx eval(Cplx t, Cplx z) const { return num.eval(t, z); }

    TPoly subst(const TPoly& p, long long degree_cap = config::kDegreeCapDefault) const {
        TPoly r(num.subst(p.num, degree_cap));
        if (exact && p.exact) r.exact = exact->subst(*p.exact, degree_cap);
        return r;
    }

    BiPoly compose(const BiPoly& inner) const {
        BiPoly r(num.compose(inner.num));
        if (exact && inner.exact) r.exact = exact->compose(*inner.exact);
        return r;
    }
};

inline bool bipoly_equal(const BiPoly& a, const BiPoly& b, double rel_tol = config::kTPolyRelTol) {
    if (a.exact && b.exact) return zpoly_equal(*a.exact, *b.exact);
    return zpoly_equal(a.num, b.num, rel_tol);
}

}  // namespace critorb
