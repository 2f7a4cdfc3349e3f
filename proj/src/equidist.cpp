#include "critorb/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "critorb/activity.hpp"
#include "critorb/parallel.hpp"

namespace critorb {

GreenSpec green_spec(const Family& fam, const TPoly& a, int cap) {
    ActivityReport rep = classify_marked_point(fam, a);
    if (!rep.active()) throw NotActive("green spec needs an active marked point");
    RobinEstimate robin = robin_constant(fam, a, rep.q);
    GreenSpec spec;
    spec.evaluator = [fam, a, cap](Cplx t) { return escape_rate(fam, a, t, cap).g; };
    spec.q = rep.q;
    spec.gamma = robin.gamma / rep.q.value();
    return spec;
}

double homogeneous_H(const GreenSpec& spec, Cplx s, Cplx t) {
    if (s == Cplx{0.0, 0.0} && t == Cplx{0.0, 0.0})
        throw OriginUndefined("H is undefined at (0,0)");
    if (t == Cplx{0.0, 0.0}) return std::log(std::abs(s)) + spec.gamma;
    return spec.normalized(s / t) + std::log(std::abs(t));
}

double arakelov_green_lifted(const GreenSpec& spec, Cplx sx, Cplx tx, Cplx sy, Cplx ty) {
    Cplx wedge = sx * ty - sy * tx;
    if (wedge == Cplx{0.0, 0.0})
        throw DiagonalPole("Arakelov-Green kernel has a pole on the diagonal");
    return -std::log(std::abs(wedge)) + homogeneous_H(spec, sx, tx) + homogeneous_H(spec, sy, ty) -
           spec.gamma;
}

double arakelov_green(const GreenSpec& spec, Cplx x, Cplx y) {
    return arakelov_green_lifted(spec, x, Cplx{1.0, 0.0}, y, Cplx{1.0, 0.0});
}

namespace {

// deterministic pairwise tree sum
double tree_sum(std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return v[0];
}

}  // namespace

EnergyReport set_energy(const GreenSpec& spec, const RootSet& S) {
    EnergyReport rep;
    std::vector<Cplx> pts = S.values_with_multiplicity();
    rep.set_size = static_cast<int>(pts.size());
    if (pts.size() < 2) return rep;  // energy 0 by convention

    std::vector<double> u(pts.size());
    parallel_for(0, pts.size(), [&](std::size_t i) { u[i] = homogeneous_H(spec, pts[i], 1.0); });

    std::vector<double> row(pts.size(), 0.0);
    parallel_for(0, pts.size(), [&](std::size_t i) {
        std::vector<double> terms;
        terms.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            double wedge = std::abs(pts[i] - pts[j]);
            terms.push_back(-std::log(wedge) + u[i] + u[j] - spec.gamma);
        }
        row[i] = tree_sum(terms);
    });
    double total = tree_sum(row);
    double n = static_cast<double>(pts.size());
    rep.energy = 0.5 * total / (n * n);
    return rep;
}

EnergyReport potential_discrepancy(const GreenSpec& spec, const RootSet& S,
                                   const std::vector<Cplx>& probes) {
    EnergyReport rep;
    std::vector<Cplx> pts = S.values_with_multiplicity();
    rep.set_size = static_cast<int>(pts.size());
    if (pts.empty()) throw ConfigError("potential discrepancy needs a nonempty set");
    for (Cplx w : probes) {
        double g = spec.evaluator(w);
        if (g <= 0.0)
            throw ProbeInsideSet("probe lies in the bounded locus (evaluator = 0)");
        PotentialProbe probe;
        probe.w = w;
        std::vector<double> terms(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) terms[i] = std::log(std::abs(w - pts[i]));
        probe.empirical = tree_sum(terms) / static_cast<double>(pts.size());
        probe.predicted = spec.normalized(w) - spec.gamma;
        rep.max_discrepancy =
            std::max(rep.max_discrepancy, std::abs(probe.empirical - probe.predicted));
        rep.potential_probes.push_back(probe);
    }
    return rep;
}

double mc_normalization_check(const GreenSpec& spec, const MassField& mu, int n_pairs,
                              unsigned long long seed) {
    const ScalarField& den = mu.density;
    const Window& w = den.window;
    std::vector<double> cdf;
    std::vector<std::pair<int, int>> cells;
    double acc = 0.0;
    for (int r = 1; r + 1 < w.ny; ++r)
        for (int c = 1; c + 1 < w.nx; ++c) {
            double m = den.at(r, c);
            if (m <= 0.0 || den.masked(r, c)) continue;  // clamp discretization noise
            acc += m;
            cdf.push_back(acc);
            cells.emplace_back(r, c);
        }
    if (cells.empty()) throw ConfigError("mass field is empty");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&]() {
        double x = unif(rng) * acc;
        std::size_t lo = std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin();
        if (lo >= cells.size()) lo = cells.size() - 1;
        auto [r, c] = cells[lo];
        Cplx center = w.center(r, c);
        return center + Cplx{(unif(rng) - 0.5) * w.h, (unif(rng) - 0.5) * w.h};
    };

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(n_pairs));
    for (int k = 0; k < n_pairs; ++k) {
        Cplx x = draw(), y = draw();
        if (x == y) continue;
        samples.push_back(arakelov_green(spec, x, y));
    }
    return tree_sum(samples) / static_cast<double>(samples.size());
}

std::string energy_report_json(const EnergyReport& rep) {
    nlohmann::json j;
    j["set_size"] = rep.set_size;
    j["energy"] = rep.energy;
    j["max_discrepancy"] = rep.max_discrepancy;
    j["place"] = "archimedean only";
    auto probes = nlohmann::json::array();
    for (const auto& p : rep.potential_probes)
        probes.push_back({{"w", {p.w.real(), p.w.imag()}},
                          {"empirical", p.empirical},
                          {"predicted", p.predicted}});
    j["potential_probes"] = probes;
    return j.dump(2);
}

}  // namespace critorb
