#pragma once

#include <optional>
#include <vector>

#include "critorb/activity.hpp"
#include "critorb/family.hpp"

namespace critorb {

// A polynomial h_t commuting with an iterate f_t^k, stored only after it
// passes its defining identity h o f^k = f^k o h exactly.
struct SymmetryCandidate {
    enum class Kind { affine, shared_iterate };
    Kind kind = Kind::affine;
    BiPoly h;
    int k = 1;
    // affine case: h = u z with u a primitive root of unity, u = e^{2 pi i p/r}
    int u_order = 1;
    int u_power = 0;
};

// Affine commutants of f^k for k <= k_max. For monic centered families the
// coefficient matching forces h = u z with u constant, u^{d^k - 1} = 1, and
// f^k(u z) = u f^k(z) holds iff ord(u) divides j - 1 for every z-degree j in
// the support of f^k. That divisibility check is exact integer arithmetic, so
// returned candidates carry an exact certificate. The identity h = z is not
// reported. Orders are capped at 64.
std::vector<SymmetryCandidate> find_affine_symmetry(const Family& fam, int k_max,
                                                    int tdeg_max = 8);

// Attempts g with g^{o e} = f by top-down coefficient matching; g monic
// centered of z-degree d^{1/e}. Returns the shared-iterate candidate (k = 1)
// or nothing when the matching system is inconsistent.
std::optional<SymmetryCandidate> functional_root(const Family& fam, int e);

// f^n(c_j) = h_t(f^m(c_i)) as a t-polynomial identity (exact lane preferred).
bool check_orbit_relation(const Family& fam, const SymmetryCandidate& h, int i, int j, int n,
                          int m);

// numeric commutation check used in tests on top of the exact certificate
bool commutes_with_iterate(const Family& fam, const SymmetryCandidate& h, int k);

struct ZetaEstimate {
    Cplx zeta{1.0, 0.0};
    int k1 = 1, k2 = 1;
    long long m1 = 0, m2 = 0;
    double modulus_dev = 0.0;
    int root_of_unity_order = 0;  // 0 = none found up to the cap
};

// zeta_i = lim phi_t(a_i(t)) / t^{m_i} over sample rings, Richardson
// extrapolated across radii with min/max-modulus outliers dropped per ring;
// zeta = zeta_2^{k2} / zeta_1^{k1} with k_i = lcm(m1,m2)/m_i.
ZetaEstimate estimate_zeta(const Family& fam, const TPoly& a1, const TPoly& a2,
                           const std::vector<double>& radii = {1e3, 1e4},
                           int nargs = config::kRingArgs);

}  // namespace critorb
