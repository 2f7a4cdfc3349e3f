#include "critorb/preperiodic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace critorb {

TPoly preperiodic_equation(const Family& fam, const TPoly& a, int n, int m,
                           long long degree_cap) {
    if (!(n > m && m >= 0)) throw ConfigError("preperiodic equation needs n > m >= 0");
    TPoly fm = iterate_symbolic(fam, a, m, degree_cap);
    TPoly fn = fm;
    for (int k = m; k < n; ++k) fn = iterate_symbolic(fam, fn, 1, degree_cap);
    return fn - fm;
}

OrbitCheck is_preperiodic_at(const Family& fam, const TPoly& a, Cplx t0, double tol,
                             OrbitCaps caps) {
    PolyMap map = family_map_at(fam, t0);
    DZPoly dfz = fam.f.num.derivative_z();
    std::vector<Cplx> dcoeffs;
    for (const auto& c : dfz.zcoeffs()) dcoeffs.push_back(c(t0));
    auto dmap = [dcoeffs](Cplx z) {
        Cplx acc{0.0, 0.0};
        for (auto it = dcoeffs.rbegin(); it != dcoeffs.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    return orbit_preperiodic_check(map, dmap, a(t0), tol, caps);
}

OrbitCheck orbit_preperiodic_check(const PolyMap& map, const std::function<Cplx(Cplx)>& dmap,
                                   Cplx z0, double tol, OrbitCaps caps) {
    OrbitCheck out;
    const double scale = 1.0 + map.escape_radius;
    std::vector<Cplx> orbit{z0};
    orbit.reserve(static_cast<std::size_t>(caps.orbit_cap) + 1);

    for (int n = 0; n < caps.orbit_cap; ++n) {
        Cplx z = orbit.back();
        if (std::abs(z) > map.escape_radius) {
            out.verdict = OrbitVerdict::escaping;
            out.note = "escape radius crossed at n=" + std::to_string(n);
            return out;
        }
        Cplx nz = map(z);
        int nn = n + 1;
        int lo = std::max(0, nn - caps.period_cap);
        for (int m = nn - 1; m >= lo; --m) {
            if (std::abs(nz - orbit[static_cast<std::size_t>(m)]) >= tol * scale) continue;
            int p = nn - m;
            // near-cycle multiplier
            Cplx lam{1.0, 0.0};
            for (int k = m; k < nn; ++k) lam *= dmap(orbit[static_cast<std::size_t>(k)]);
            double alam = std::abs(lam);
            out.preperiod = m;
            out.period = p;
            out.multiplier_abs = alam;
            if (alam > 1e-5 && alam < 1.0 - 1e-3) {
                out.verdict = OrbitVerdict::undecided;
                out.note = "orbit tracks an attracting cycle (|mult|=" + std::to_string(alam) +
                           "); landing not distinguishable from convergence at float precision";
                return out;
            }
            if (alam >= 1.0 - 1e-3 && alam <= 1.0 + 1e-3) {
                out.verdict = OrbitVerdict::undecided;
                out.note = "near-neutral cycle, |mult|=" + std::to_string(alam);
                return out;
            }
            // repelling or superattracting: the coincidence must survive
            // continued iteration. For a repelling cycle the sustainable
            // window is set by the multiplier: even an exact landing sees
            // rounding noise amplified by |mult| per turn, so demanding more
            // steps than log(threshold/noise)/log|mult| would reject true
            // parameters, and fewer would pass wide misses.
            Cplx zc = orbit[static_cast<std::size_t>(m)];
            Cplx zn = nz;
            double gap0 = std::abs(zn - zc);
            int steps = 2 * caps.period_cap;
            if (alam > 1.0) {
                double noise = std::max(gap0 / scale, 1e-14);
                double k = std::log(10.0 * tol / noise) / std::log(alam);
                steps = std::clamp(static_cast<int>(k), 2, 2 * caps.period_cap);
            }
            bool stable = true;
            double final_gap = gap0;
            for (int k = 0; k < steps; ++k) {
                zc = map(zc);
                zn = map(zn);
                final_gap = std::abs(zn - zc);
                if (final_gap > 10.0 * tol * scale) {
                    stable = false;
                    break;
                }
            }
            if (stable && (alam <= 1e-5 ? final_gap <= 1e-11 * scale : true)) {
                out.verdict = OrbitVerdict::preperiodic;
                out.note = alam <= 1e-5 ? "superattracting cycle" : "repelling cycle, landed";
                return out;
            }
            // fall through: keep iterating, the close return was spurious
        }
        orbit.push_back(nz);
    }
    out.verdict = OrbitVerdict::undecided;
    out.note = "no verdict within orbit cap";
    return out;
}

std::vector<DriverEquation> all_pairs_driver(int a_index, int n_max) {
    std::vector<DriverEquation> out;
    for (int n = 1; n <= n_max; ++n)
        for (int m = 0; m < n; ++m) out.push_back({a_index, n, m});
    return out;
}

PcfResult find_pcf(const Family& fam, const std::vector<DriverEquation>& driver, double tol,
                   OrbitCaps caps) {
    PcfResult result;

    // activity of the non-driver marked points decides which need a verdict
    std::vector<bool> is_active(fam.marked.size(), true);
    for (std::size_t i = 0; i < fam.marked.size(); ++i) {
        try {
            is_active[i] = classify_marked_point(fam, fam.marked[i]).active();
        } catch (const Inconclusive&) {
            is_active[i] = true;  // treat as active: demand a verdict
        }
    }

    struct Candidate {
        Cplx t;
        std::string source;
        double residual;
    };
    std::vector<Candidate> candidates;

    for (const auto& eq : driver) {
        const TPoly& a = fam.marked.at(static_cast<std::size_t>(eq.a_index));
        std::string label = "f^" + std::to_string(eq.n) + "(a" + std::to_string(eq.a_index) +
                            ")=f^" + std::to_string(eq.m) + "(a" + std::to_string(eq.a_index) + ")";
        TPoly p = preperiodic_equation(fam, a, eq.n, eq.m);
        if (p.is_zero()) continue;  // persistent relation: driver passive for this pair
        RootSet rs = solve_roots(p, {}, label);
        for (const auto& root : rs.roots) {
            // independent pushforward check by orbit iteration
            PolyMap m = family_map_at(fam, root.value);
            Cplx z = a(root.value);
            Cplx zm{0.0, 0.0}, zn{0.0, 0.0};
            double big = 1.0;
            for (int k = 0; k <= eq.n; ++k) {
                if (k == eq.m) zm = z;
                if (k == eq.n) zn = z;
                big = std::max(big, std::abs(z));
                if (k < eq.n) z = m(z);
            }
            if (std::abs(zn - zm) > 1e-7 * big) continue;  // spurious root, dropped
            candidates.push_back({root.value, label, root.residual});
        }
    }

    // cluster across equations, provenance kept
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.t.real() != y.t.real()) return x.t.real() < y.t.real();
        return x.t.imag() < y.t.imag();
    });
    std::vector<Candidate> distinct;
    std::vector<std::string> provenance;
    for (const auto& c : candidates) {
        bool merged = false;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            if (std::abs(distinct[i].t - c.t) <= config::kRootClusterTol * (1.0 + std::abs(c.t))) {
                provenance[i] += ";" + c.source;
                merged = true;
                break;
            }
        }
        if (!merged) {
            distinct.push_back(c);
            provenance.push_back(c.source);
        }
    }

    result.pcf.source = "pcf(" + fam.label + ")";
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        PcfVerdictEntry entry;
        entry.t = distinct[i].t;
        entry.source = provenance[i];
        bool all_ok = true;
        for (std::size_t j = 0; j < fam.marked.size(); ++j) {
            bool is_driver = false;
            for (const auto& eq : driver)
                if (static_cast<std::size_t>(eq.a_index) == j) is_driver = true;
            if (is_driver || !is_active[j]) continue;
            OrbitCheck chk = is_preperiodic_at(fam, fam.marked[j], distinct[i].t, tol, caps);
            entry.others.push_back(chk);
            if (chk.verdict != OrbitVerdict::preperiodic) all_ok = false;
        }
        entry.pcf = all_ok;
        if (all_ok)
            result.pcf.roots.push_back({distinct[i].t, 1, distinct[i].residual});
        result.log.push_back(std::move(entry));
    }
    return result;
}

void write_rootset_csv(const RootSet& rs, const std::string& path,
                       const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "re,im,multiplicity,residual,source\n";
    out.precision(17);
    for (const auto& r : rs.roots)
        out << r.value.real() << "," << r.value.imag() << "," << r.multiplicity << ","
            << r.residual << "," << rs.source << "\n";
}

}  // namespace critorb
