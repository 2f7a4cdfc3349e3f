#pragma once

#include <map>

#include "critorb/preperiodic.hpp"
#include "critorb/raster.hpp"

namespace critorb {

// The cubic family with a fixed point of multiplier lambda at the origin:
//   f_s(z) = lambda z - (lambda/2)(s + 1/s) z^2 + (lambda/3) z^3,
// critical points c_+(s) = s and c_-(s) = 1/s. Construction verifies
// f_s'(c_+-) = 0 symbolically (as Laurent polynomials in s) and the fixed
// point multiplier at 0.
struct Per1Family {
    Cplx lambda;

    PolyMap map_at(Cplx s) const;
    Cplx c_plus(Cplx s) const { return s; }
    Cplx c_minus(Cplx s) const { return 1.0 / s; }
};

Per1Family make_per1(Cplx lambda);  // lambda != 0; the lambda = 0 slice is polynomial

// Laurent polynomial in s (exponent -> coefficient); the symbolic carrier for
// the construction checks and the leading-coefficient identity of f_s^n(s).
using LaurentS = std::map<long long, Cplx>;
LaurentS per1_orbit_laurent(const Per1Family& fam, int n);  // f_s^n(s), n >= 1

EscapeValue per1_green(const Per1Family& fam, Cplx s, int sign,
                       int cap = config::kScalarEscapeCap);

// Escape rate computed through the centered conjugate P_s of f_s; agrees with
// per1_green because the conjugacy is the translation z + (s + 1/s)/2.
EscapeValue per1_centered_green(const Per1Family& fam, Cplx s, int sign,
                                int cap = config::kScalarEscapeCap);

// Ring-averaged G+(s) - log|s| at |s| = radius.
double per1_robin_gamma(const Per1Family& fam, double radius = 1e4,
                        int nargs = config::kRingArgs);
// The constant term of the expansion: (1/6) log|lambda/3| + (1/3) log|lambda/6|.
double per1_gamma_formula(Cplx lambda);

// H+-(s,t) = lim 3^{-n} log ||F^n_{(s,t)}(seed)||, seed (s,t) for +, (t,s)
// for -, with F_{(s,t)}(z,w) = (lambda z w^2 - (lambda/2)(s/t + t/s) z^2 w +
// (lambda/3) z^3, w^3). Scales as H(as, at) = H(s,t) + log|a|.
double per1_homogeneous(const Per1Family& fam, Cplx s, Cplx t, int sign);

struct Per1Measures {
    ScalarField green_plus;
    ScalarField green_minus;
    MassField mu_plus;
    MassField mu_minus;
};

// G- has a logarithmic singularity at s = 0, so pixels within
// max(origin_radius, 10h) of the origin are masked out of both Laplacians.
// A pixel center strictly inside the origin_radius disk is refused.
Per1Measures per1_measures(const Per1Family& fam, const Window& w,
                           int cap = config::kRasterEscapeCap,
                           double origin_radius = config::kOriginExclusionRadius);

struct Per1SearchParams {
    int scan_cap = 400;       // orbit length in the grid scan
    int certify_cap = 2048;   // orbit length in the final certification
    int period_cap = 24;
    double scan_tol = 1e-3;   // close-return trigger during the scan
    double certify_tol = 1e-9;
    int newton_iters = 48;
    double origin_radius = config::kOriginExclusionRadius;
};

// Grid scan for parameters where both critical orbits are certified
// preperiodic, with Newton refinement on the close-return equation of c_+.
// lambda = 0 delegates to the polynomial slice z^3 - 3t^2 z + t + 2t^3 and
// the preperiodic-module search (driver: the active critical point -t).
RootSet per1_pcf_search(Cplx lambda, const Window& w, bool refine = true,
                        const Per1SearchParams& params = {});

// The lambda = 0 harvest, exposed for direct use: n <= n_max driver pairs.
PcfResult per1_zero_pcf(int n_max = 5);

}  // namespace critorb
