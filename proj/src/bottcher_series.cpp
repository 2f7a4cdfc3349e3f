#include "critorb/bottcher_series.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace critorb {

namespace {

// Finite Laurent window: c[i] multiplies z^{top-i}.
template <class K>
struct Laurent {
    long long top = 0;
    std::vector<Poly<K>> c;

    Poly<K> at_exp(long long e) const {
        long long i = top - e;
        if (i < 0 || i >= static_cast<long long>(c.size())) return Poly<K>::zero();
        return c[static_cast<std::size_t>(i)];
    }
};

// Product truncated below z^{lowest}.
template <class K>
Laurent<K> mul(const Laurent<K>& a, const Laurent<K>& b, long long lowest) {
    Laurent<K> r;
    r.top = a.top + b.top;
    long long len = r.top - lowest + 1;
    if (len < 1) len = 1;
    r.c.assign(static_cast<std::size_t>(len), Poly<K>::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            std::size_t k = i + j;
            if (k >= r.c.size()) continue;
            r.c[k] = r.c[k] + a.c[i] * b.c[j];
        }
    }
    return r;
}

template <class K>
Laurent<K> pow_trunc(const Laurent<K>& a, int k, long long lowest) {
    Laurent<K> acc;
    acc.top = 0;
    acc.c = {Poly<K>::constant(scalar_traits<K>::from_int(1))};
    Laurent<K> base = a;
    int e = k;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, lowest);
        e >>= 1;
        if (e > 0) base = mul(base, base, lowest);
    }
    return acc;
}

template <class K>
std::vector<Poly<K>> solve_g(const ZPoly<K>& f, int S_max) {
    const int d = static_cast<int>(f.zdegree());
    const long long lowest = static_cast<long long>(d) - (S_max + 1);

    // w = f/z^d - 1, exponents -2 .. -d
    Laurent<K> w;
    w.top = -2;
    w.c.assign(static_cast<std::size_t>(d - 1), Poly<K>::zero());
    for (int j = 0; j <= d - 2; ++j)
        w.c[static_cast<std::size_t>(d - 2 - j)] = f.zcoeff(static_cast<std::size_t>(j));

    // (1+w)^{-1} = sum (-w)^k down to the depth the f^{-s} terms can need
    const long long inv_lowest = -(static_cast<long long>(S_max) + 1);
    Laurent<K> inv;
    inv.top = 0;
    inv.c.assign(static_cast<std::size_t>(-inv_lowest) + 1, Poly<K>::zero());
    inv.c[0] = Poly<K>::constant(scalar_traits<K>::from_int(1));
    {
        Laurent<K> neg_w = w;
        for (auto& p : neg_w.c) p = -p;
        Laurent<K> pw;
        pw.top = 0;
        pw.c = {Poly<K>::constant(scalar_traits<K>::from_int(1))};
        for (int k = 1; 2 * k <= -inv_lowest; ++k) {
            pw = mul(pw, neg_w, inv_lowest);
            for (std::size_t i = 0; i < pw.c.size(); ++i) {
                long long e = pw.top - static_cast<long long>(i);
                long long idx = inv.top - e;
                if (idx >= 0 && idx < static_cast<long long>(inv.c.size()))
                    inv.c[static_cast<std::size_t>(idx)] =
                        inv.c[static_cast<std::size_t>(idx)] + pw.c[i];
            }
        }
    }
    // inv^s for the f^{-s} = z^{-ds} inv^s terms that can reach the window
    int s_need = (S_max + 1 - d) / d;
    std::vector<Laurent<K>> invpow;
    if (s_need >= 1) {
        invpow.resize(static_cast<std::size_t>(s_need) + 1);
        invpow[1] = inv;
        for (int s = 2; s <= s_need; ++s)
            invpow[static_cast<std::size_t>(s)] =
                mul(invpow[static_cast<std::size_t>(s - 1)], inv, inv_lowest);
    }

    // phi window: c[i] <-> z^{1-i}; c[1+s] = g_s
    Laurent<K> phi;
    phi.top = 1;
    phi.c.assign(static_cast<std::size_t>(S_max) + 2, Poly<K>::zero());
    phi.c[0] = Poly<K>::constant(scalar_traits<K>::from_int(1));

    std::vector<Poly<K>> g(static_cast<std::size_t>(S_max) + 1);  // g[0] = g_0 (must vanish)
    for (int j = 1; j <= S_max + 1; ++j) {
        const long long e = static_cast<long long>(d) - j;
        Poly<K> lhs = (e >= 0) ? f.zcoeff(static_cast<std::size_t>(e)) : Poly<K>::zero();
        for (int s = 1; s <= s_need; ++s) {
            if (e + static_cast<long long>(d) * s > 0) continue;
            const Poly<K>& gs = g[static_cast<std::size_t>(s)];
            if (gs.is_zero()) continue;
            lhs = lhs + gs * invpow[static_cast<std::size_t>(s)].at_exp(
                            e + static_cast<long long>(d) * s);
        }
        Laurent<K> phid = pow_trunc(phi, d, e);
        Poly<K> rhs = phid.at_exp(e);
        g[static_cast<std::size_t>(j - 1)] = (lhs - rhs).div_int(d);
        phi.c[static_cast<std::size_t>(j)] = g[static_cast<std::size_t>(j - 1)];
    }
    if (!g[0].is_zero())
        throw Error("Boettcher series: nonzero constant term for a centered family");
    g.erase(g.begin());
    return g;
}

template <class K>
Laurent<K> phi_from_g(int S_max, const std::vector<Poly<K>>& g) {
    Laurent<K> phi;
    phi.top = 1;
    phi.c.assign(static_cast<std::size_t>(S_max) + 2, Poly<K>::zero());
    phi.c[0] = Poly<K>::constant(scalar_traits<K>::from_int(1));
    for (int s = 1; s <= S_max; ++s)
        phi.c[static_cast<std::size_t>(s) + 1] = g[static_cast<std::size_t>(s - 1)];
    return phi;
}

}  // namespace

TruncatedBottcher bottcher_series(const Family& fam, int S_max) {
    if (S_max < 1) throw ConfigError("bottcher_series needs S_max >= 1");
    TruncatedBottcher tb;
    tb.d = fam.d();
    tb.S_max = S_max;
    if (fam.f.exact) {
        auto ge = solve_g(*fam.f.exact, S_max);
        for (auto& p : ge) tb.g.push_back(TPoly::from_exact(std::move(p)));
    } else {
        auto gn = solve_g(fam.f.num, S_max);
        for (auto& p : gn) tb.g.emplace_back(std::move(p));
    }
    return tb;
}

namespace {

template <class K>
void split_lane(const std::vector<Poly<K>>& g, int d, int S_max, int k, int tail_terms,
                ZPoly<K>& P_out, std::vector<Poly<K>>& b_out) {
    (void)d;
    Laurent<K> phi = phi_from_g(S_max, g);
    Laurent<K> phik = pow_trunc(phi, k, -static_cast<long long>(tail_terms));
    std::vector<Poly<K>> pc(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) pc[static_cast<std::size_t>(j)] = phik.at_exp(j);
    P_out = ZPoly<K>(std::move(pc));
    b_out.clear();
    for (int s = 1; s <= tail_terms; ++s) b_out.push_back(phik.at_exp(-s));
}

}  // namespace

PowerSplit power_split(const TruncatedBottcher& tb, int k, int tail_terms) {
    if (k < 1) throw ConfigError("power_split needs k >= 1");
    const int avail = tb.S_max + 1 - k;
    if (tail_terms < 0) tail_terms = std::max(avail, 0);
    if (tail_terms > avail)
        throw TruncationInsufficient("phi^" + std::to_string(k) + " tail exact only to s = " +
                                     std::to_string(avail) + " at S_max = " +
                                     std::to_string(tb.S_max));

    PowerSplit ps;
    ps.k = k;
    const bool exact = !tb.g.empty() ? tb.g.front().has_exact() : true;
    if (exact && !tb.g.empty()) {
        std::vector<RPoly> ge;
        for (const auto& p : tb.g) ge.push_back(*p.exact);
        RZPoly P;
        std::vector<RPoly> b;
        split_lane(ge, tb.d, tb.S_max, k, tail_terms, P, b);
        ps.P = BiPoly::from_exact(std::move(P));
        for (auto& p : b) ps.b.push_back(TPoly::from_exact(std::move(p)));
    } else {
        std::vector<DPoly> gn;
        for (const auto& p : tb.g) gn.push_back(p.num);
        DZPoly P;
        std::vector<DPoly> b;
        split_lane(gn, tb.d, tb.S_max, k, tail_terms, P, b);
        ps.P = BiPoly(std::move(P));
        for (auto& p : b) ps.b.emplace_back(std::move(p));
    }
    if (!ps.P.is_monic_centered())
        throw Error("power_split: polynomial part is not monic centered");
    return ps;
}

std::vector<bool> verify_poly_relation(const Family& fam, const TPoly& a1, const TPoly& a2,
                                       int k1, int k2, Cplx zeta, int n_max) {
    const long long m1 = a1.degree(), m2 = a2.degree();
    if (m1 < 1 || m2 < 1 || static_cast<long long>(k1) * m1 != static_cast<long long>(k2) * m2)
        throw ConfigError("poly relation needs k1 deg(a1) = k2 deg(a2) with positive degrees");
    const int d = fam.d();
    for (int n = 1; n <= 2; ++n) {
        long long dn = 1;
        for (int i = 0; i < n; ++i) dn *= d;
        if (iterate_symbolic(fam, a1, n).degree() != m1 * dn ||
            iterate_symbolic(fam, a2, n).degree() != m2 * dn)
            throw ConfigError("marked points are not iterate-normalized: deg f^n(a) != m d^n");
    }

    TruncatedBottcher tb = bottcher_series(fam, std::max(k1, k2));
    BiPoly P1 = power_split(tb, k1, 0).P;
    BiPoly P2 = power_split(tb, k2, 0).P;

    const bool zeta_exact = (zeta == Cplx{1, 0} || zeta == Cplx{-1, 0} || zeta == Cplx{0, 1} ||
                             zeta == Cplx{0, -1});
    std::vector<bool> verdicts;
    Cplx zpow = zeta;
    TPoly o1 = a1, o2 = a2;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) {
            o1 = iterate_symbolic(fam, o1, 1);
            o2 = iterate_symbolic(fam, o2, 1);
            Cplx next = zpow;
            for (int i = 1; i < d; ++i) next *= zpow;
            zpow = next;
        }
        TPoly lhs = P2.subst(o2);
        TPoly rhs_base = P1.subst(o1);
        TPoly rhs(rhs_base.num * zpow);
        if (zeta_exact && rhs_base.exact) {
            GaussRat zr{BigRat(static_cast<long long>(std::lround(zpow.real()))),
                        BigRat(static_cast<long long>(std::lround(zpow.imag())))};
            rhs.exact = *rhs_base.exact * zr;
        }
        verdicts.push_back(tpoly_equal(lhs, rhs, 1e-8));
    }
    return verdicts;
}

std::string series_json(const TruncatedBottcher& tb) {
    nlohmann::json j;
    j["S_max"] = tb.S_max;
    j["d"] = tb.d;
    auto coeffs = nlohmann::json::array();
    for (const auto& g : tb.g) {
        auto arr = nlohmann::json::array();
        for (const auto& c : g.num.coeffs()) arr.push_back({c.real(), c.imag()});
        coeffs.push_back(arr);
    }
    j["g"] = coeffs;
    return j.dump(2);
}

}  // namespace critorb
