#pragma once

#include <string>
#include <vector>

#include "critorb/activity.hpp"
#include "critorb/family.hpp"

namespace critorb {

// Laurent tail of the Boettcher coordinate at infinity,
// phi_t(z) = z + sum_{s>=1} g_s(t) z^{-s}, with each g_s a t-polynomial.
// Solved by matching phi(f(z)) = phi(z)^d degree by degree: the system is
// triangular, g_s determined by g_1..g_{s-1}. The z^0 coefficient comes out
// exactly zero for centered families and is asserted.
struct TruncatedBottcher {
    int d = 0;
    int S_max = 0;
    std::vector<TPoly> g;  // g[s-1] = g_s, s = 1..S_max

    const TPoly& g_s(int s) const { return g.at(static_cast<std::size_t>(s - 1)); }

    // Evaluate the truncated series at a point (|z| large).
    Cplx eval(Cplx t, Cplx z) const {
        Cplx acc{0.0, 0.0};
        for (int s = S_max; s >= 1; --s) acc = (acc + g_s(s)(t)) / z;
        return z + acc;
    }
};

// phi^k = P_t^k(z) + sum_s b_s^k(t) z^{-s}; P monic centered of z-degree k.
// The tail window that is exact from a series truncated at S_max is
// s <= S_max + 1 - k.
struct PowerSplit {
    int k = 0;
    BiPoly P;
    std::vector<TPoly> b;  // b[s-1] = b_s^k

    const TPoly& b_s(int s) const { return b.at(static_cast<std::size_t>(s - 1)); }
};

TruncatedBottcher bottcher_series(const Family& fam, int S_max);

// tail_terms < 0 requests every exactly-known tail coefficient.
PowerSplit power_split(const TruncatedBottcher& tb, int k, int tail_terms = -1);

// Checks P^{k2}(f^n(a2)) = zeta^{d^n} P^{k1}(f^n(a1)) as a t-polynomial
// identity for each n <= n_max. Inputs must already be iterate-normalized:
// deg f^n(a_i) = m_i d^n with k1 m1 = k2 m2.
std::vector<bool> verify_poly_relation(const Family& fam, const TPoly& a1, const TPoly& a2,
                                       int k1, int k2, Cplx zeta, int n_max);

// {"S_max": n, "g": [[[re,im],...], ...]}
std::string series_json(const TruncatedBottcher& tb);

}  // namespace critorb
