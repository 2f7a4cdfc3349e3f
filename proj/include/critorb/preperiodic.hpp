#pragma once

#include <string>
#include <vector>

#include "critorb/activity.hpp"
#include "critorb/escape.hpp"
#include "critorb/roots.hpp"

namespace critorb {

// Exact t-polynomial f^n(a) - f^m(a); its roots are the parameters where the
// marked point satisfies that orbit coincidence. The zero polynomial means
// the relation is persistent (a passive point).
TPoly preperiodic_equation(const Family& fam, const TPoly& a, int n, int m,
                           long long degree_cap = config::kDegreeCapDefault);

enum class OrbitVerdict { preperiodic, escaping, undecided };

struct OrbitCaps {
    int orbit_cap = 2048;
    int period_cap = 64;
};

struct OrbitCheck {
    OrbitVerdict verdict = OrbitVerdict::undecided;
    int preperiod = 0;  // m of the certified coincidence f^n = f^m
    int period = 0;     // n - m
    double multiplier_abs = 0.0;
    std::string note;
};

// Numerical preperiodicity certificate at one parameter. A close return is
// accepted only when the near-cycle is superattracting (a critical point on
// the cycle) or repelling and the coincidence survives continued iteration;
// an orbit tracking an attracting non-superattracting or neutral cycle
// reports undecided (at float precision an exact landing on such a cycle is
// indistinguishable from convergence, and PCF maps never carry one anyway).
// Crossing the escape radius reports escaping.
OrbitCheck is_preperiodic_at(const Family& fam, const TPoly& a, Cplx t0, double tol = 1e-9,
                             OrbitCaps caps = {});

// Core certificate over a raw polynomial map (used by the Per1 search too).
OrbitCheck orbit_preperiodic_check(const PolyMap& map, const std::function<Cplx(Cplx)>& dmap,
                                   Cplx z0, double tol, OrbitCaps caps);

struct DriverEquation {
    int a_index;
    int n;
    int m;
};

struct PcfVerdictEntry {
    Cplx t;
    std::string source;
    bool pcf = false;
    std::vector<OrbitCheck> others;  // verdicts for the non-driver marked points
};

struct PcfResult {
    RootSet pcf;  // numerically certified parameters
    std::vector<PcfVerdictEntry> log;
};

// Solve the driver equations and keep the roots where every other active
// marked point is certified preperiodic. Roots failing the independent
// orbit-iteration residual check are dropped (and logged), never kept.
PcfResult find_pcf(const Family& fam, const std::vector<DriverEquation>& driver,
                   double tol = 1e-9, OrbitCaps caps = {});

std::vector<DriverEquation> all_pairs_driver(int a_index, int n_max);

void write_rootset_csv(const RootSet& rs, const std::string& path,
                       const std::vector<std::string>& comments = {});

}  // namespace critorb
