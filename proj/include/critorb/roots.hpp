#pragma once

#include <string>
#include <vector>

#include "critorb/tpoly.hpp"

namespace critorb {

struct Root {
    Cplx value;
    int multiplicity = 1;
    double residual = 0.0;  // |p| at the root in max-coefficient-normalized scale
};

// Finite multiset of complex parameters, e.g. the solutions of one
// preperiodic equation. Sum of multiplicities equals the source degree.
struct RootSet {
    std::vector<Root> roots;
    std::string source;

    int total_multiplicity() const {
        int s = 0;
        for (const auto& r : roots) s += r.multiplicity;
        return s;
    }
    std::vector<Cplx> values_with_multiplicity() const {
        std::vector<Cplx> v;
        for (const auto& r : roots)
            for (int k = 0; k < r.multiplicity; ++k) v.push_back(r.value);
        return v;
    }
};

struct RootSolveOptions {
    int max_sweeps = config::kRootMaxSweeps;
    double cluster_tol = config::kRootClusterTol;
    long long degree_cap = config::kRootDegreeCap;
};

// All complex roots with multiplicity by simultaneous Aberth-Ehrlich
// iteration (Jacobi sweeps for determinism), started on a circle at the
// Fujiwara bound. Clusters within cluster_tol are merged into multiplicity.
RootSet solve_poly_roots(const std::vector<Cplx>& coeffs, const RootSolveOptions& opts = {},
                         std::string source = "");

RootSet solve_roots(const TPoly& p, const RootSolveOptions& opts = {}, std::string source = "");

}  // namespace critorb
