#include "critorb/per1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "critorb/parallel.hpp"

namespace critorb {

namespace {

LaurentS laurent_mul(const LaurentS& a, const LaurentS& b) {
    LaurentS r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
    for (auto it = r.begin(); it != r.end();)
        it = (std::abs(it->second) < 1e-14) ? r.erase(it) : std::next(it);
    return r;
}

LaurentS laurent_add(LaurentS a, const LaurentS& b) {
    for (const auto& [e, c] : b) a[e] += c;
    for (auto it = a.begin(); it != a.end();)
        it = (std::abs(it->second) < 1e-14) ? a.erase(it) : std::next(it);
    return a;
}

LaurentS laurent_scale(LaurentS a, Cplx s) {
    for (auto& [e, c] : a) c *= s;
    return a;
}

// f_s applied to a Laurent polynomial in s
LaurentS per1_apply(const Per1Family& fam, const LaurentS& z) {
    LaurentS coef_quad{{1, -fam.lambda / 2.0}, {-1, -fam.lambda / 2.0}};
    LaurentS z2 = laurent_mul(z, z);
    LaurentS z3 = laurent_mul(z2, z);
    LaurentS acc = laurent_scale(z, fam.lambda);
    acc = laurent_add(acc, laurent_mul(coef_quad, z2));
    acc = laurent_add(acc, laurent_scale(z3, fam.lambda / 3.0));
    return acc;
}

}  // namespace

PolyMap Per1Family::map_at(Cplx s) const {
    return make_poly_map({Cplx{0.0, 0.0}, lambda, -(lambda / 2.0) * (s + 1.0 / s), lambda / 3.0});
}

LaurentS per1_orbit_laurent(const Per1Family& fam, int n) {
    LaurentS z{{1, Cplx{1.0, 0.0}}};  // z = s
    for (int k = 0; k < n; ++k) z = per1_apply(fam, z);
    return z;
}

Per1Family make_per1(Cplx lambda) {
    if (lambda == Cplx{0.0, 0.0})
        throw ConfigError("lambda = 0 is the polynomial slice; use per1_pcf_search(0, ...) "
                          "or the preperiodic module directly");
    Per1Family fam{lambda};

    // f'_s(z) = lambda - lambda (s + 1/s) z + lambda z^2 must vanish at
    // z = s and z = 1/s identically in s.
    auto df_at = [&](const LaurentS& z) {
        LaurentS lin{{1, -lambda}, {-1, -lambda}};
        LaurentS acc{{0, lambda}};
        acc = laurent_add(acc, laurent_mul(lin, z));
        acc = laurent_add(acc, laurent_scale(laurent_mul(z, z), lambda));
        return acc;
    };
    if (!df_at(LaurentS{{1, Cplx{1.0, 0.0}}}).empty() ||
        !df_at(LaurentS{{-1, Cplx{1.0, 0.0}}}).empty())
        throw Error("per1 construction: critical points are not s and 1/s");

    // fixed point at 0 with multiplier lambda
    PolyMap probe = fam.map_at(Cplx{1.3, 0.4});
    if (std::abs(probe.c[0]) != 0.0 || std::abs(probe.c[1] - lambda) > 1e-14)
        throw Error("per1 construction: origin fixed point check failed");
    return fam;
}

EscapeValue per1_green(const Per1Family& fam, Cplx s, int sign, int cap) {
    if (s == Cplx{0.0, 0.0}) throw ConfigError("per1 green undefined at s = 0");
    PolyMap m = fam.map_at(s);
    return escape_orbit(m, sign >= 0 ? fam.c_plus(s) : fam.c_minus(s), cap);
}

EscapeValue per1_centered_green(const Per1Family& fam, Cplx s, int sign, int cap) {
    if (s == Cplx{0.0, 0.0}) throw ConfigError("per1 green undefined at s = 0");
    const Cplx l = fam.lambda;
    Cplx s2 = s * s;
    Cplx lin = l / 2.0 - (l / 4.0) * (s2 + 1.0 / s2);
    Cplx cst = (s + 1.0 / s) * (6.0 - 4.0 * l + l * s2 + l / s2) / 12.0;
    PolyMap m = make_poly_map({cst, lin, Cplx{0.0, 0.0}, l / 3.0});
    Cplx crit = (s2 - 1.0) / (2.0 * s);
    return escape_orbit(m, sign >= 0 ? crit : -crit, cap);
}

double per1_gamma_formula(Cplx lambda) {
    return std::log(std::abs(lambda / 3.0)) / 6.0 + std::log(std::abs(lambda / 6.0)) / 3.0;
}

double per1_robin_gamma(const Per1Family& fam, double radius, int nargs) {
    double sum = 0.0;
    for (int k = 0; k < nargs; ++k) {
        double th = 2.0 * std::numbers::pi * (k + 0.5) / nargs;
        Cplx s = std::polar(radius, th);
        sum += per1_green(fam, s, +1).g - std::log(radius);
    }
    return sum / nargs;
}

double per1_homogeneous(const Per1Family& fam, Cplx s, Cplx t, int sign) {
    if (s == Cplx{0.0, 0.0} && t == Cplx{0.0, 0.0})
        throw DegenerateLift("homogeneous lift undefined at (0,0)");
    if (s == Cplx{0.0, 0.0} || t == Cplx{0.0, 0.0})
        throw DegenerateLift("the lift formula divides by s/t and t/s");
    const Cplx l = fam.lambda;
    const Cplx q = -(l / 2.0) * (s / t + t / s);
    auto F = [&](Cplx z, Cplx w) {
        return std::pair<Cplx, Cplx>{l * z * w * w + q * z * z * w + (l / 3.0) * z * z * z,
                                     w * w * w};
    };
    Cplx z = (sign >= 0) ? s : t;
    Cplx w = (sign >= 0) ? t : s;
    double norm = std::max(std::abs(z), std::abs(w));
    if (norm == 0.0) throw DegenerateLift("zero seed");
    double acc = std::log(norm);
    z /= norm;
    w /= norm;
    double weight = 1.0 / 3.0;
    for (int n = 0; n < 64 && weight > 1e-19; ++n) {
        auto [nz, nw] = F(z, w);
        double m = std::max(std::abs(nz), std::abs(nw));
        if (m == 0.0) throw DegenerateLift("orbit hit the common zero of the lift");
        acc += weight * std::log(m);
        z = nz / m;
        w = nw / m;
        weight /= 3.0;
    }
    return acc;
}

Per1Measures per1_measures(const Per1Family& fam, const Window& w, int cap,
                           double origin_radius) {
    // refuse evaluation requests inside the exclusion disk
    for (int r = 0; r < w.ny; ++r)
        for (int c = 0; c < w.nx; ++c)
            if (std::abs(w.center(r, c)) < origin_radius)
                throw WindowContainsOrigin(
                    "a pixel center falls inside the origin exclusion disk (radius " +
                    std::to_string(origin_radius) + ")");

    ScalarField gp(w, FieldKind::green), gm(w, FieldKind::green);
    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col) {
            Cplx s = w.center(static_cast<int>(row), col);
            PolyMap m = fam.map_at(s);
            gp.at(static_cast<int>(row), col) = escape_orbit(m, fam.c_plus(s), cap).g;
            gm.at(static_cast<int>(row), col) = escape_orbit(m, fam.c_minus(s), cap).g;
        }
    });

    // mask the log singularity of G- out of both Laplacians; 10h keeps the
    // discrete flux error of the -log|s| term under ~1%
    double mask_radius = std::max(origin_radius, 10.0 * w.h);
    std::vector<unsigned char> mask(static_cast<std::size_t>(w.nx) * w.ny, 0);
    bool any = false;
    for (int r = 0; r < w.ny; ++r)
        for (int c = 0; c < w.nx; ++c)
            if (std::abs(w.center(r, c)) <= mask_radius) {
                mask[static_cast<std::size_t>(r) * w.nx + c] = 1;
                any = true;
            }
    if (any) {
        gp.mask = mask;
        gm.mask = mask;
    }

    MassField mp = bif_measure(gp);
    MassField mm = bif_measure(gm);
    return Per1Measures{std::move(gp), std::move(gm), std::move(mp), std::move(mm)};
}

PcfResult per1_zero_pcf(int n_max) {
    Family slice = families::per1_zero_slice();
    // the fixed critical point is t (index 0); the active one is -t (index 1)
    return find_pcf(slice, all_pairs_driver(1, n_max));
}

RootSet per1_pcf_search(Cplx lambda, const Window& w, bool refine, const Per1SearchParams& prm) {
    if (lambda == Cplx{0.0, 0.0}) {
        RootSet rs = per1_zero_pcf(5).pcf;
        rs.source = "per1 pcf lambda=0 (polynomial slice)";
        return rs;
    }
    Per1Family fam = make_per1(lambda);

    struct Candidate {
        Cplx s;
        int n, m;
    };
    std::vector<std::vector<Candidate>> per_row(static_cast<std::size_t>(w.ny));

    auto scan_orbit = [&](const PolyMap& map, Cplx z0, int& n_out, int& m_out,
                          double& mult_out) -> int {
        // returns: 0 escape, 1 close return found, 2 bounded without return
        const double scale = 1.0 + std::min(map.escape_radius, 1e6);
        std::vector<Cplx> orbit{z0};
        for (int n = 0; n < prm.scan_cap; ++n) {
            Cplx z = orbit.back();
            if (std::abs(z) > map.escape_radius) return 0;
            Cplx nz = map(z);
            int nn = n + 1;
            int lo = std::max(0, nn - prm.period_cap);
            for (int m = nn - 1; m >= lo; --m) {
                if (std::abs(nz - orbit[static_cast<std::size_t>(m)]) < prm.scan_tol * scale) {
                    // cycle multiplier from the near-cycle points
                    Cplx lam{1.0, 0.0};
                    for (int k = m; k < nn; ++k) {
                        Cplx zz = orbit[static_cast<std::size_t>(k)];
                        lam *= map.c[1] + 2.0 * map.c[2] * zz + 3.0 * map.c[3] * zz * zz;
                    }
                    n_out = nn;
                    m_out = m;
                    mult_out = std::abs(lam);
                    return 1;
                }
            }
            orbit.push_back(nz);
        }
        return 2;
    };

    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col) {
            Cplx s = w.center(static_cast<int>(row), col);
            if (std::abs(s) < prm.origin_radius) continue;
            PolyMap map = fam.map_at(s);
            int np = 0, mp = 0, nm = 0, mm = 0;
            double multp = 0.0, multm = 0.0;
            int vp = scan_orbit(map, fam.c_plus(s), np, mp, multp);
            if (vp != 1) continue;
            int vm = scan_orbit(map, fam.c_minus(s), nm, mm, multm);
            if (vm != 1) continue;
            // refine superattracting-flavored candidates, plus repelling ones
            // already holding the relation tightly
            bool worth = (multp <= 0.9) || (multp >= 1.1 && multm >= 1.1);
            if (worth) per_row[row].push_back({s, np, mp});
        }
    });

    std::vector<Candidate> cands;
    for (auto& v : per_row) cands.insert(cands.end(), v.begin(), v.end());

    auto orbit_gap = [&](Cplx s, int n, int m) {
        PolyMap map = fam.map_at(s);
        Cplx z = fam.c_plus(s);
        Cplx zm{0.0, 0.0};
        for (int k = 0; k <= n; ++k) {
            if (k == m) zm = z;
            if (k == n) break;
            z = map(z);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return Cplx{1e30, 0.0};
        }
        return z - zm;
    };

    std::vector<Cplx> refined;
    for (const auto& cand : cands) {
        Cplx s = cand.s;
        if (refine) {
            bool ok = false;
            for (int it = 0; it < prm.newton_iters; ++it) {
                Cplx g = orbit_gap(s, cand.n, cand.m);
                double hstep = 1e-7 * (1.0 + std::abs(s));
                Cplx gp = orbit_gap(s + hstep, cand.n, cand.m);
                Cplx gm2 = orbit_gap(s - hstep, cand.n, cand.m);
                Cplx dg = (gp - gm2) / (2.0 * hstep);
                if (dg == Cplx{0.0, 0.0}) break;
                Cplx step = g / dg;
                s -= step;
                if (std::abs(s) < prm.origin_radius) break;
                if (std::abs(step) < 1e-12 * (1.0 + std::abs(s))) {
                    ok = std::abs(orbit_gap(s, cand.n, cand.m)) <
                         1e-10 * (1.0 + std::abs(fam.c_plus(s)));
                    break;
                }
            }
            if (!ok) continue;
        }
        refined.push_back(s);
    }

    // certify both critical orbits at the refined parameters
    RootSet out;
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "per1 pcf lambda=%g%+gi", lambda.real(), lambda.imag());
        out.source = buf;
    }
    OrbitCaps caps{prm.certify_cap, prm.period_cap};
    for (Cplx s : refined) {
        PolyMap map = fam.map_at(s);
        auto dmap = [&](Cplx z) { return map.c[1] + 2.0 * map.c[2] * z + 3.0 * map.c[3] * z * z; };
        OrbitCheck plus = orbit_preperiodic_check(map, dmap, fam.c_plus(s), prm.certify_tol, caps);
        if (plus.verdict != OrbitVerdict::preperiodic) continue;
        OrbitCheck minus =
            orbit_preperiodic_check(map, dmap, fam.c_minus(s), prm.certify_tol, caps);
        if (minus.verdict != OrbitVerdict::preperiodic) continue;
        bool dup = false;
        for (auto& r : out.roots)
            if (std::abs(r.value - s) <= config::kRootClusterTol * (1.0 + std::abs(s))) {
                dup = true;
                break;
            }
        if (!dup) out.roots.push_back({s, 1, 0.0});
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace critorb
