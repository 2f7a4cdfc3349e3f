#include "critorb/escape.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace critorb {

namespace {
constexpr double kErrFloor = 1e-13;
}

PolyMap make_poly_map(std::vector<Cplx> coeffs) {
    while (!coeffs.empty() && coeffs.back() == Cplx{0.0, 0.0}) coeffs.pop_back();
    if (coeffs.size() < 3) throw ConfigError("poly map needs degree >= 2");
    PolyMap m;
    m.d = static_cast<int>(coeffs.size()) - 1;
    double lead = std::abs(coeffs.back());
    double lower = 0.0;
    for (std::size_t j = 0; j + 1 < coeffs.size(); ++j) lower += std::abs(coeffs[j]);
    m.escape_radius = std::max({1.0, 2.0 * lower / lead, std::pow(2.0 / lead, 1.0 / (m.d - 1))});
    m.log_lead = std::log(lead);
    m.tail_const =
        std::abs(m.log_lead) + std::numbers::ln2 + std::log1p(lower / lead);
    m.huge_norm = std::pow(1e250 / std::max(1.0, lower + 2.0 * lead), 1.0 / m.d);
    m.c = std::move(coeffs);
    return m;
}

PolyMap family_map_at(const Family& fam, Cplx t) {
    PolyMap m;
    m.d = fam.d();
    m.c.resize(static_cast<std::size_t>(m.d) + 1);
    double lower = 0.0;
    for (int j = 0; j <= m.d; ++j) {
        m.c[static_cast<std::size_t>(j)] = fam.f.num.zcoeff(static_cast<std::size_t>(j))(t);
        if (j < m.d) lower += std::abs(m.c[static_cast<std::size_t>(j)]);
    }
    m.escape_radius = 1.0 + lower;
    m.log_lead = 0.0;
    m.tail_const = std::numbers::ln2 + std::log1p(lower / m.escape_radius);
    m.huge_norm = std::pow(1e250 / std::max(1.0, lower + 2.0), 1.0 / m.d);
    return m;
}

EscapeValue escape_orbit(const PolyMap& map, Cplx z0, int cap) {
    if (cap < 1) throw ConfigError("escape cap must be >= 1");
    EscapeValue out;
    Cplx z = z0;
    int n = 0;
    bool crossed = false;
    while (n < cap) {
        if (std::abs(z) > map.escape_radius) {
            crossed = true;
            break;
        }
        z = map(z);
        ++n;
    }
    if (!crossed) {
        out.g = 0.0;
        out.escaped = false;
        out.iterations_used = cap;
        out.err = std::pow(static_cast<double>(map.d), -cap) *
                  (std::log(1.0 + map.escape_radius) + map.tail_const);
        return out;
    }
    // Grow until the orbit is large enough that closing the limit in log
    // space leaves only a sub-rounding tail.
    int guard = 0;
    while (std::abs(z) < map.huge_norm && n < cap + 128 && guard < 128) {
        z = map(z);
        ++n;
        ++guard;
    }
    double dn = std::pow(static_cast<double>(map.d), -n);
    double az = std::abs(z);
    out.escaped = true;
    out.iterations_used = n;
    if (az >= map.huge_norm) {
        // G = d^{-n}(log|z_n| + log|lead|/(d-1)) up to sum d^{-n-k-1} log(1+u),
        // and |u| <= lower/(|lead| |z|^{d-1}) is below double resolution here.
        out.g = dn * (std::log(az) + map.log_lead / (map.d - 1));
        out.err = std::max(kErrFloor, dn * 1e-12);
    } else {
        out.g = dn * std::log(std::max(az, 1.0));
        out.err = std::max(kErrFloor, dn * map.tail_const);
    }
    if (out.g <= 0.0) {
        // d^{-n} underflows for very late escapes; crossing the radius still
        // certifies escape, so keep g strictly positive.
        out.g = std::numeric_limits<double>::denorm_min();
    }
    return out;
}

EscapeValue escape_rate(const Family& fam, const TPoly& a, Cplx t, int cap) {
    PolyMap m = family_map_at(fam, t);
    return escape_orbit(m, a(t), cap);
}

double max_critical_escape(const Family& fam, Cplx t, int cap) {
    PolyMap m = family_map_at(fam, t);
    double best = 0.0;
    for (Cplx c : numeric_critical_points(fam, t))
        best = std::max(best, escape_orbit(m, c, cap).g);
    return best;
}

RobinEstimate robin_from_evaluator(const std::function<double(Cplx)>& green, Rational q,
                                   const std::vector<double>& radii, int nargs) {
    if (!q.positive()) throw NotActive("robin constant needs growth exponent q > 0");
    RobinEstimate est;
    est.q = q;
    double total = 0.0;
    int count = 0;
    double lo = 0.0, hi = 0.0;
    for (std::size_t r = 0; r < radii.size(); ++r) {
        double radius = radii[r];
        double ring_sum = 0.0;
        bool last = (r + 1 == radii.size());
        for (int k = 0; k < nargs; ++k) {
            double th = 2.0 * std::numbers::pi * (k + 0.5) / nargs;
            Cplx t = std::polar(radius, th);
            double sample = green(t) - q.value() * std::log(radius);
            ring_sum += sample;
            if (last) {
                if (k == 0) lo = hi = sample;
                lo = std::min(lo, sample);
                hi = std::max(hi, sample);
            }
        }
        est.samples.emplace_back(radius, ring_sum / nargs);
        total += ring_sum;
        count += nargs;
    }
    est.gamma = total / count;
    est.spread = hi - lo;
    return est;
}

RobinEstimate robin_constant(const Family& fam, const TPoly& a, Rational q,
                             const std::vector<double>& radii, int nargs) {
    auto green = [&](Cplx t) { return escape_rate(fam, a, t).g; };
    return robin_from_evaluator(green, q, radii, nargs);
}

Cplx bottcher_value(const Family& fam, Cplx t, Cplx z, int cap) {
    PolyMap m = family_map_at(fam, t);
    double big = max_critical_escape(fam, t, cap);
    EscapeValue gz = escape_orbit(m, z, cap);
    if (!gz.escaped || gz.g <= big)
        throw OutsideDomain("z is not in the natural domain of the Boettcher coordinate");

    // u = f(z)/z^d - 1 = sum_{j<d} c_j z^{j-d}, evaluated in powers of 1/z
    auto u_of = [&](Cplx zz) {
        Cplx w = 1.0 / zz;
        Cplx acc{0.0, 0.0};
        for (int j = m.d - 1; j >= 0; --j) acc = (acc + m.c[static_cast<std::size_t>(j)]) * w;
        return acc;
    };

    Cplx phi = z;
    Cplx zn = z;
    double expo = 1.0 / m.d;
    for (int n = 0; n < cap; ++n) {
        if (std::abs(zn) >= m.huge_norm || expo < 1e-18) break;
        Cplx u = u_of(zn);
        if (std::abs(u) >= 0.75)
            throw OutsideDomain("branch guard tripped: orbit too close to the critical locus");
        phi *= std::pow(Cplx{1.0, 0.0} + u, expo);
        zn = m(zn);
        expo /= m.d;
    }
    return phi;
}

}  // namespace critorb
