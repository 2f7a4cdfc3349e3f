#include "critorb/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "critorb/escape.hpp"

namespace critorb {

namespace {

BiPoly iterate_map(const Family& fam, int k) {
    BiPoly fk = fam.f;
    for (int i = 1; i < k; ++i) fk = fam.f.compose(fk);
    return fk;
}

BiPoly rotation_bipoly(int order, int power) {
    double th = 2.0 * std::numbers::pi * power / order;
    Cplx u = std::polar(1.0, th);
    BiPoly out{DZPoly(std::vector<DPoly>{DPoly::zero(), DPoly::constant(u)})};
    // u is Gaussian rational exactly when its order divides 4
    if (order == 1 || order == 2 || order == 4) {
        GaussRat ur;
        if (order == 1) ur = GaussRat(1);
        else if (order == 2) ur = GaussRat(-1);
        else ur = GaussRat{BigRat(0), BigRat(power == 1 ? 1 : -1)};
        out.exact = RZPoly(std::vector<RPoly>{RPoly::zero(), RPoly(std::vector<GaussRat>{ur})});
    }
    return out;
}

template <class K>
Poly<K> div_scalar(const Poly<K>& p, const K& s) {
    std::vector<K> c = p.coeffs();
    for (auto& v : c) v = v / s;
    return Poly<K>(std::move(c));
}

template <class K>
std::optional<ZPoly<K>> functional_root_lane(const ZPoly<K>& f, int e, int r) {
    const int d = static_cast<int>(f.zdegree());
    std::vector<Poly<K>> gc(static_cast<std::size_t>(r) + 1, Poly<K>::zero());
    gc[static_cast<std::size_t>(r)] = Poly<K>::constant(scalar_traits<K>::from_int(1));
    auto compose_e = [&](const ZPoly<K>& g) {
        ZPoly<K> acc = g;
        for (int i = 1; i < e; ++i) acc = g.compose(acc);
        return acc;
    };
    // monic compositions: the z^{d-j} coefficient of g^{oe} depends only on
    // the top j coefficients of g, and on a_j affinely with an integer slope
    for (int j = 2; j <= r; ++j) {
        gc[static_cast<std::size_t>(r - j)] = Poly<K>::zero();
        Poly<K> c0 = compose_e(ZPoly<K>(gc)).zcoeff(static_cast<std::size_t>(d - j));
        gc[static_cast<std::size_t>(r - j)] =
            Poly<K>::constant(scalar_traits<K>::from_int(1));
        Poly<K> c1 = compose_e(ZPoly<K>(gc)).zcoeff(static_cast<std::size_t>(d - j));
        Poly<K> slope = c1 - c0;
        if (slope.degree() != 0 || scalar_traits<K>::is_zero(slope.coeff(0)))
            return std::nullopt;
        gc[static_cast<std::size_t>(r - j)] =
            div_scalar(f.zcoeff(static_cast<std::size_t>(d - j)) - c0, slope.coeff(0));
    }
    ZPoly<K> g(gc);
    if (!zpoly_equal(compose_e(g), f, 1e-8)) return std::nullopt;
    return g;
}

}  // namespace

std::vector<SymmetryCandidate> find_affine_symmetry(const Family& fam, int k_max, int tdeg_max) {
    (void)tdeg_max;  // matching forces deg_t u = 0 and v = 0; kept for API shape
    std::vector<SymmetryCandidate> out;
    std::vector<std::pair<int, int>> seen;  // (order, power)
    for (int k = 1; k <= k_max; ++k) {
        BiPoly fk = iterate_map(fam, k);
        long long g = 0;
        for (std::size_t j = 0; j < fk.num.zcoeffs().size(); ++j) {
            bool nonzero = fk.exact ? !fk.exact->zcoeff(j).is_zero() : !fk.num.zcoeff(j).is_zero();
            if (!nonzero) continue;
            long long e = static_cast<long long>(j) - 1;
            g = std::gcd(g, e < 0 ? -e : e);
        }
        if (g <= 1) continue;
        for (int r = 2; r <= std::min<long long>(g, config::kUnitOrderCap); ++r) {
            if (g % r != 0) continue;
            for (int p = 1; p < r; ++p) {
                if (std::gcd(p, r) != 1) continue;
                if (std::find(seen.begin(), seen.end(), std::make_pair(r, p)) != seen.end())
                    continue;
                seen.emplace_back(r, p);
                SymmetryCandidate cand;
                cand.kind = SymmetryCandidate::Kind::affine;
                cand.h = rotation_bipoly(r, p);
                cand.k = k;
                cand.u_order = r;
                cand.u_power = p;
                if (!commutes_with_iterate(fam, cand, k))
                    throw Error("affine symmetry certificate failed numeric re-verification");
                out.push_back(std::move(cand));
            }
        }
    }
    return out;
}

bool commutes_with_iterate(const Family& fam, const SymmetryCandidate& cand, int k) {
    BiPoly fk = iterate_map(fam, k);
    BiPoly lhs = cand.h.compose(fk);
    BiPoly rhs = fk.compose(cand.h);
    return bipoly_equal(lhs, rhs, 1e-8);
}

std::optional<SymmetryCandidate> functional_root(const Family& fam, int e) {
    if (e < 2) throw ConfigError("functional root needs e >= 2");
    const int d = fam.d();
    int r = static_cast<int>(std::lround(std::pow(static_cast<double>(d), 1.0 / e)));
    long long check = 1;
    for (int i = 0; i < e; ++i) check *= r;
    if (r < 2 || check != d)
        throw NoIntegerRootDegree("no integer r with r^" + std::to_string(e) + " = " +
                                  std::to_string(d));

    SymmetryCandidate cand;
    cand.kind = SymmetryCandidate::Kind::shared_iterate;
    cand.k = 1;
    if (fam.f.exact) {
        auto ge = functional_root_lane(*fam.f.exact, e, r);
        if (!ge) return std::nullopt;
        cand.h = BiPoly::from_exact(std::move(*ge));
    } else {
        auto gn = functional_root_lane(fam.f.num, e, r);
        if (!gn) return std::nullopt;
        cand.h = BiPoly(std::move(*gn));
    }
    // g o f = g o g^e = f o g
    if (!commutes_with_iterate(fam, cand, 1)) return std::nullopt;
    return cand;
}

bool check_orbit_relation(const Family& fam, const SymmetryCandidate& h, int i, int j, int n,
                          int m) {
    const TPoly& ci = fam.marked.at(static_cast<std::size_t>(i));
    const TPoly& cj = fam.marked.at(static_cast<std::size_t>(j));
    TPoly lhs = iterate_symbolic(fam, cj, n);
    TPoly rhs = h.h.subst(iterate_symbolic(fam, ci, m));
    return tpoly_equal(lhs, rhs, 1e-8);
}

ZetaEstimate estimate_zeta(const Family& fam, const TPoly& a1, const TPoly& a2,
                           const std::vector<double>& radii, int nargs) {
    ZetaEstimate est;
    est.m1 = a1.degree();
    est.m2 = a2.degree();
    if (est.m1 < 1 || est.m2 < 1)
        throw NotInDomain("marked points must have positive t-degree");
    long long L = std::lcm(est.m1, est.m2);
    est.k1 = static_cast<int>(L / est.m1);
    est.k2 = static_cast<int>(L / est.m2);

    auto ring_mean = [&](const TPoly& a, long long mdeg, double radius) {
        std::vector<Cplx> vals;
        for (int k = 0; k < nargs; ++k) {
            double th = 2.0 * std::numbers::pi * (k + 0.5) / nargs;
            Cplx t = std::polar(radius, th);
            Cplx z = a(t);
            Cplx phi = bottcher_value(fam, t, z);
            vals.push_back(phi / std::pow(t, static_cast<double>(mdeg)));
        }
        auto cmp = [](Cplx x, Cplx y) { return std::abs(x) < std::abs(y); };
        auto lo = std::min_element(vals.begin(), vals.end(), cmp);
        auto hi = std::max_element(vals.begin(), vals.end(), cmp);
        Cplx sum{0.0, 0.0};
        int n = 0;
        for (auto it = vals.begin(); it != vals.end(); ++it) {
            if (it == lo || it == hi) continue;
            sum += *it;
            ++n;
        }
        return sum / static_cast<double>(n);
    };

    auto extrapolate = [&](const TPoly& a, long long mdeg) {
        std::vector<Cplx> per_ring;
        for (double r : radii) per_ring.push_back(ring_mean(a, mdeg, r));
        if (per_ring.size() == 1) return per_ring[0];
        double r1 = radii[radii.size() - 2], r2 = radii.back();
        return (r2 * per_ring.back() - r1 * per_ring[per_ring.size() - 2]) / (r2 - r1);
    };

    Cplx z1, z2;
    try {
        z1 = extrapolate(a1, est.m1);
        z2 = extrapolate(a2, est.m2);
    } catch (const OutsideDomain& e) {
        throw NotInDomain(std::string("marked point leaves the Boettcher domain: ") + e.what());
    }
    Cplx num{1.0, 0.0}, den{1.0, 0.0};
    for (int i = 0; i < est.k2; ++i) num *= z2;
    for (int i = 0; i < est.k1; ++i) den *= z1;
    est.zeta = num / den;
    est.modulus_dev = std::abs(std::abs(est.zeta) - 1.0);

    est.root_of_unity_order = 0;
    Cplx zp{1.0, 0.0};
    for (int rr = 1; rr <= config::kUnitOrderCap; ++rr) {
        zp *= est.zeta;
        if (std::abs(zp - Cplx{1.0, 0.0}) <= config::kZetaOrderTol) {
            est.root_of_unity_order = rr;
            break;
        }
    }
    return est;
}

}  // namespace critorb
