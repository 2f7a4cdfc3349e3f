#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "critorb/activity.hpp"
#include "critorb/family.hpp"

namespace critorb {

struct EscapeValue {
    double g = 0.0;    // escape rate, log-modulus per unit capacity
    double err = 0.0;  // a posteriori bound
    int iterations_used = 0;
    bool escaped = false;
};

// One-variable polynomial orbit engine shared by the family and Per1 paths.
// escape_radius is a Cauchy-type bound past which |p(z)| grows monotonically;
// tail_const C gives |d^{-n} log|z_n| - G| <= C d^{-n} once |z_n| > R.
struct PolyMap {
    std::vector<Cplx> c;  // coefficients by degree, c.back() != 0
    int d = 0;
    double escape_radius = 0.0;
    double tail_const = 0.0;
    double huge_norm = 0.0;  // overflow-safe orbit ceiling
    double log_lead = 0.0;

    Cplx operator()(Cplx z) const {
        Cplx acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
};

PolyMap make_poly_map(std::vector<Cplx> coeffs);
// spec escape radius for monic-centered families: R(f_t) = 1 + sum_j |b_j(t)|
PolyMap family_map_at(const Family& fam, Cplx t);

// Iterate until the escape radius is crossed or cap is reached; after a
// crossing the orbit continues (overflow-guarded) until the remaining tail of
// the limit is below rounding, then closes the sum in log space.
EscapeValue escape_orbit(const PolyMap& map, Cplx z0, int cap);

EscapeValue escape_rate(const Family& fam, const TPoly& a, Cplx t,
                        int cap = config::kScalarEscapeCap);

// M(f_t): the largest escape rate among the critical points of f_t.
double max_critical_escape(const Family& fam, Cplx t, int cap = config::kScalarEscapeCap);

struct RobinEstimate {
    double gamma = 0.0;
    Rational q;
    std::vector<std::pair<double, double>> samples;  // (radius, ring mean of G - q log r)
    double spread = 0.0;                             // max - min over the largest ring
};

// Ring-averaged constant term of G ~ q log|t| + gamma: rings of |t| with
// uniformly spread arguments expose the o(1) trend instead of trusting one
// huge radius.
RobinEstimate robin_from_evaluator(const std::function<double(Cplx)>& green, Rational q,
                                   const std::vector<double>& radii = {1e3, 1e4, 1e5},
                                   int nargs = config::kRingArgs);

RobinEstimate robin_constant(const Family& fam, const TPoly& a, Rational q,
                             const std::vector<double>& radii = {1e3, 1e4, 1e5},
                             int nargs = config::kRingArgs);

// Boettcher coordinate by the orbit product with principal branches:
// phi(z) = z * prod_n (1 + u_n)^{1/d^{n+1}}, u_n = (f(z_n) - z_n^d)/z_n^d.
// Requires G_t(z) > M(f_t); each |u_n| must stay under the branch guard.
Cplx bottcher_value(const Family& fam, Cplx t, Cplx z, int cap = config::kScalarEscapeCap);

}  // namespace critorb
