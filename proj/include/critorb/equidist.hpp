#pragma once

#include <functional>

#include "critorb/escape.hpp"
#include "critorb/raster.hpp"
#include "critorb/roots.hpp"

namespace critorb {

// Archimedean Green's-function data for one bounded locus: evaluator is the
// raw escape rate G (mass q); gamma is the Robin constant of the
// mass-normalized Green's function G/q = log|s| + gamma + o(1).
struct GreenSpec {
    std::function<double(Cplx)> evaluator;
    Rational q{1};
    double gamma = 0.0;

    double normalized(Cplx t) const { return evaluator(t) / q.value(); }
};

// spec from a family + active marked point; gamma via ring averaging
GreenSpec green_spec(const Family& fam, const TPoly& a, int cap = config::kScalarEscapeCap);

// H(s,t) = G_norm(s/t) + log|t| for t != 0, log|s| + gamma at t = 0.
// Scales logarithmically: H(as, at) = H(s,t) + log|a|.
double homogeneous_H(const GreenSpec& spec, Cplx s, Cplx t);

// g_mu(x,y) = -log|x~ ^ y~| + H(x~) + H(y~) - gamma with lifts (x,1), (y,1);
// lift-independent by the scaling law.
double arakelov_green(const GreenSpec& spec, Cplx x, Cplx y);
double arakelov_green_lifted(const GreenSpec& spec, Cplx sx, Cplx tx, Cplx sy, Cplx ty);

struct PotentialProbe {
    Cplx w;
    double empirical = 0.0;  // (1/|S|) sum log|w - s_i|
    double predicted = 0.0;  // G_norm(w) - gamma
};

struct EnergyReport {
    int set_size = 0;
    double energy = 0.0;
    std::vector<PotentialProbe> potential_probes;
    double max_discrepancy = 0.0;
};

// (1/2)(1/|S|^2) sum_{i != j} g_mu(s_i, s_j); size-1 sets give 0 by
// convention. Pair sums are reduced by a deterministic pairwise tree so the
// result is bit-stable under any thread count.
EnergyReport set_energy(const GreenSpec& spec, const RootSet& S);

// Logarithmic-potential comparison: for each probe w outside the bounded
// locus, empirical potential of [S] against the prediction from the Green's
// function. Throws ProbeInsideSet when evaluator(w) = 0.
EnergyReport potential_discrepancy(const GreenSpec& spec, const RootSet& S,
                                   const std::vector<Cplx>& probes);

// Monte-Carlo check of the normalization iint g_mu dmu dmu = 0, sampling mu
// from a discrete mass field; fixed seed, jittered within cells.
double mc_normalization_check(const GreenSpec& spec, const MassField& mu, int n_pairs,
                              unsigned long long seed);

std::string energy_report_json(const EnergyReport& rep);

}  // namespace critorb
