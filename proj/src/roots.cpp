#include "critorb/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "critorb/parallel.hpp"

namespace critorb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Horner evaluation with derivative and a running error bound
// (|p(z)| below the bound is numerically indistinguishable from zero).
struct EvalResult {
    Cplx p, dp;
    double err;
};

EvalResult eval_with_error(const std::vector<Cplx>& c, Cplx z) {
    Cplx p = c.back();
    Cplx dp{0.0, 0.0};
    double az = std::abs(z);
    double e = std::abs(p) * 0.5;
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[j];
        e = e * az + std::abs(p);
    }
    return {p, dp, (2.0 * e - std::abs(p)) * kEps * 4.0};
}

}  // namespace

RootSet solve_poly_roots(const std::vector<Cplx>& coeffs_in, const RootSolveOptions& opts,
                         std::string source) {
    std::vector<Cplx> c = coeffs_in;
    while (!c.empty() && c.back() == Cplx{0.0, 0.0}) c.pop_back();
    if (c.empty()) throw ZeroPolynomial("zero polynomial has no root set" +
                                        (source.empty() ? "" : " (" + source + ")"));

    RootSet out;
    out.source = std::move(source);
    long long deg = static_cast<long long>(c.size()) - 1;
    if (deg > opts.degree_cap)
        throw DegreeCapExceeded("root solve refused at degree " + std::to_string(deg) + " > cap " +
                                std::to_string(opts.degree_cap));
    if (deg == 0) return out;

    // Exact zero roots come off first; keeps the scaled problem nonsingular at 0.
    int zero_mult = 0;
    while (!c.empty() && c.front() == Cplx{0.0, 0.0}) {
        c.erase(c.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.push_back({Cplx{0.0, 0.0}, zero_mult, 0.0});
    long long n = static_cast<long long>(c.size()) - 1;
    if (n == 0) return out;
    if (n == 1) {
        Cplx r = -c[0] / c[1];
        out.roots.push_back({r, 1, 0.0});
        return out;
    }

    // Fujiwara bound, in log space so huge coefficient spreads cannot overflow:
    // R = 2 max_j |c_{n-j}/c_n|^{1/j}
    double log_lead = std::log(std::abs(c[static_cast<std::size_t>(n)]));
    double logR = -std::numeric_limits<double>::infinity();
    for (long long j = 1; j <= n; ++j) {
        double a = std::abs(c[static_cast<std::size_t>(n - j)]);
        if (a == 0.0) continue;
        logR = std::max(logR, (std::log(a) - log_lead) / static_cast<double>(j));
    }
    if (!std::isfinite(logR)) logR = 0.0;
    logR += std::numbers::ln2;

    // Substitute u = z / R and normalize the max coefficient to 1.
    std::vector<double> logmag(static_cast<std::size_t>(n) + 1,
                               -std::numeric_limits<double>::infinity());
    double shift = -std::numeric_limits<double>::infinity();
    for (long long j = 0; j <= n; ++j) {
        double a = std::abs(c[static_cast<std::size_t>(j)]);
        if (a == 0.0) continue;
        logmag[static_cast<std::size_t>(j)] = std::log(a) + static_cast<double>(j) * logR;
        shift = std::max(shift, logmag[static_cast<std::size_t>(j)]);
    }
    std::vector<Cplx> q(static_cast<std::size_t>(n) + 1, Cplx{0.0, 0.0});
    for (long long j = 0; j <= n; ++j) {
        double lm = logmag[static_cast<std::size_t>(j)];
        if (!std::isfinite(lm)) continue;
        Cplx dir = c[static_cast<std::size_t>(j)] / std::abs(c[static_cast<std::size_t>(j)]);
        q[static_cast<std::size_t>(j)] = dir * std::exp(lm - shift);
    }

    // Start ring slightly outside the scaled root disk, angles offset so no
    // starting point sits on a symmetry axis of the polynomial.
    std::vector<Cplx> u(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n) + 0.376;
        u[static_cast<std::size_t>(i)] = std::polar(1.1, th);
    }

    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::vector<double> resid(static_cast<std::size_t>(n), 0.0);
    std::vector<Cplx> next(static_cast<std::size_t>(n));
    const bool parallel = n >= 256;

    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        double max_step = 0.0;
        auto update = [&](std::size_t i) {
            if (done[i]) {
                next[i] = u[i];
                return;
            }
            EvalResult ev = eval_with_error(q, u[i]);
            resid[i] = std::abs(ev.p);
            if (resid[i] <= ev.err) {
                done[i] = 1;
                next[i] = u[i];
                return;
            }
            Cplx newton = (ev.dp == Cplx{0.0, 0.0}) ? Cplx{0.0, 0.0} : ev.p / ev.dp;
            Cplx rep{0.0, 0.0};
            for (std::size_t k = 0; k < u.size(); ++k) {
                if (k == i) continue;
                Cplx diff = u[i] - u[k];
                if (diff == Cplx{0.0, 0.0}) diff = Cplx{1e-14, 1e-14};
                rep += 1.0 / diff;
            }
            Cplx denom = 1.0 - newton * rep;
            Cplx corr = (denom == Cplx{0.0, 0.0}) ? newton : newton / denom;
            next[i] = u[i] - corr;
        };
        if (parallel) {
            parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) { update(i); });
        } else {
            for (std::size_t i = 0; i < u.size(); ++i) update(i);
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            max_step = std::max(max_step, std::abs(next[i] - u[i]));
            u[i] = next[i];
        }
        bool all_done = std::all_of(done.begin(), done.end(), [](char d) { return d != 0; });
        if (all_done || max_step < 1e-15) break;
    }

    for (std::size_t i = 0; i < u.size(); ++i) {
        EvalResult ev = eval_with_error(q, u[i]);
        resid[i] = std::abs(ev.p);
        // Multiple roots stall the iteration at a cluster of radius ~eps^(1/m);
        // the residual there is already at the noise floor, so only a residual
        // far above the evaluation error bound counts as a failure.
        if (resid[i] > 1e6 * std::max(ev.err, 1e-300))
            throw ConvergenceFailure("root iteration stalled with residual " +
                                     std::to_string(resid[i]));
    }

    double R = std::exp(logR);
    std::vector<char> used(u.size(), 0);
    std::vector<Root> found;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> cluster{i};
        used[i] = 1;
        for (std::size_t k = i + 1; k < u.size(); ++k) {
            if (used[k]) continue;
            if (std::abs(u[i] - u[k]) * R <= opts.cluster_tol * (1.0 + std::abs(u[i]) * R)) {
                cluster.push_back(k);
                used[k] = 1;
            }
        }
        Cplx mean{0.0, 0.0};
        double res = 0.0;
        for (std::size_t k : cluster) {
            mean += u[k];
            res = std::max(res, resid[k]);
        }
        mean /= static_cast<double>(cluster.size());
        found.push_back({mean * R, static_cast<int>(cluster.size()), res});
    }
    std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    for (auto& r : found) out.roots.push_back(r);
    return out;
}

RootSet solve_roots(const TPoly& p, const RootSolveOptions& opts, std::string source) {
    if (p.is_zero())
        throw ZeroPolynomial("preperiodic equation vanished identically" +
                             (source.empty() ? "" : " (" + source + ")"));
    return solve_poly_roots(p.num.coeffs(), opts, std::move(source));
}

}  // namespace critorb
