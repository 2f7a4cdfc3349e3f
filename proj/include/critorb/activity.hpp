#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "critorb/family.hpp"
#include "critorb/rational.hpp"
#include "critorb/roots.hpp"

namespace critorb {

// Marked-point classification by degree growth: once an iterate's t-degree
// exceeds every lower coefficient degree, each further iterate multiplies the
// degree by d exactly, and the escape rate grows like q log|t| with
// q = m0 / d^{n0}. A passive point instead repeats an earlier iterate as an
// exact polynomial identity.
struct ActivityReport {
    enum class Status { active, passive_preperiodic };
    Status status = Status::active;
    Rational q;                                // growth exponent (log|t| per unit Green value)
    int n0 = 0;
    long long m0 = 0;
    std::optional<std::pair<int, int>> witness;  // passive: f^n(a) = f^m(a), n > m
    std::vector<long long> degree_sequence;
    bool active() const { return status == Status::active; }
};

Cplx eval(const BiPoly& f, Cplx t, Cplx z);

// Exact t-polynomial f_t^n(a(t)); exact lane used when available and the
// projected degree stays under the exact-lane cap.
TPoly iterate_symbolic(const Family& fam, const TPoly& a, int n,
                       long long degree_cap = config::kDegreeCapDefault);

// Inconclusive is thrown (with the raw degree sequence in the message) when
// neither the degree criterion nor an exact coincidence triggers by n_max.
ActivityReport classify_marked_point(const Family& fam, const TPoly& a, int n_max = 16);

// The d-1 roots of d/dz f_t at the given parameter, with multiplicity.
std::vector<Cplx> numeric_critical_points(const Family& fam, Cplx t);

}  // namespace critorb
