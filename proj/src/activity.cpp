#include "critorb/activity.hpp"

#include <sstream>

namespace critorb {

Cplx eval(const BiPoly& f, Cplx t, Cplx z) { return f.eval(t, z); }

namespace {

long long projected_subst_degree(const DZPoly& f, long long adeg) {
    long long proj = -1;
    for (std::size_t j = 0; j < f.zcoeffs().size(); ++j) {
        if (f.zcoeffs()[j].is_zero()) continue;
        proj = std::max(proj, f.zcoeffs()[j].degree() +
                                  static_cast<long long>(j) * std::max<long long>(adeg, 0));
    }
    return proj;
}

}  // namespace

TPoly iterate_symbolic(const Family& fam, const TPoly& a, int n, long long degree_cap) {
    if (n < 0) throw ConfigError("iterate count must be >= 0");
    TPoly cur = a;
    for (int k = 0; k < n; ++k) {
        long long proj = projected_subst_degree(fam.f.num, cur.num.degree());
        if (proj > degree_cap)
            throw DegreeCapExceeded("iterate " + std::to_string(k + 1) + " would reach t-degree " +
                                    std::to_string(proj) + " > cap " + std::to_string(degree_cap));
        TPoly nxt(fam.f.num.subst(cur.num, degree_cap));
        if (fam.f.exact && cur.exact && proj <= config::kExactDegreeCap)
            nxt.exact = fam.f.exact->subst(*cur.exact, degree_cap);
        cur = std::move(nxt);
    }
    return cur;
}

ActivityReport classify_marked_point(const Family& fam, const TPoly& a, int n_max) {
    if (n_max < 1) throw ConfigError("classify needs n_max >= 1");
    const long long bmax = fam.f.num.max_lower_tdeg();
    const int d = fam.d();

    std::vector<TPoly> orbit{a};
    ActivityReport rep;
    rep.degree_sequence.push_back(a.degree());

    for (int n = 0; n <= n_max; ++n) {
        const TPoly& cur = orbit.back();
        if (cur.degree() > bmax) {
            rep.status = ActivityReport::Status::active;
            rep.n0 = n;
            rep.m0 = cur.degree();
            long long dn = 1;
            for (int k = 0; k < n; ++k) dn *= d;
            rep.q = Rational(rep.m0, dn);
            // the degree law must hold exactly from here on; verify two steps
            TPoly step = cur;
            long long expect = rep.m0;
            for (int k = 0; k < 2; ++k) {
                step = iterate_symbolic(fam, step, 1);
                expect *= d;
                rep.degree_sequence.push_back(step.degree());
                if (step.degree() != expect)
                    throw Inconclusive("degree law failed after activity trigger");
            }
            return rep;
        }
        if (n == n_max) break;
        TPoly nxt = iterate_symbolic(fam, cur, 1);
        // low-degree orbit: look for an exact repeat (persistent preperiodicity)
        for (int m = 0; m < static_cast<int>(orbit.size()); ++m) {
            if (tpoly_equal(nxt, orbit[static_cast<std::size_t>(m)])) {
                rep.status = ActivityReport::Status::passive_preperiodic;
                rep.witness = std::make_pair(n + 1, m);
                rep.q = Rational(0);
                return rep;
            }
        }
        orbit.push_back(nxt);
        rep.degree_sequence.push_back(nxt.degree());
    }

    std::ostringstream os;
    os << "activity undecided within n_max=" << n_max << "; degree sequence:";
    for (long long dg : rep.degree_sequence) os << ' ' << dg;
    throw Inconclusive(os.str());
}

std::vector<Cplx> numeric_critical_points(const Family& fam, Cplx t) {
    DZPoly df = fam.f.num.derivative_z();
    std::vector<Cplx> coeffs;
    for (const auto& c : df.zcoeffs()) coeffs.push_back(c(t));
    RootSet rs;
    try {
        rs = solve_poly_roots(coeffs, {}, "critical points");
    } catch (const ConvergenceFailure& e) {
        throw RootFindFailure(e.what());
    }
    std::vector<Cplx> out;
    for (const auto& r : rs.roots)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);

    // residual guard: |f'(root)| should vanish to rounding
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    for (Cplx c : out) {
        Cplx v{0.0, 0.0};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * c + *it;
        if (std::abs(v) > 1e-9 * (1.0 + scale))
            throw RootFindFailure("critical point residual too large");
    }
    return out;
}

}  // namespace critorb
