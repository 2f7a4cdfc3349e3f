#pragma once

#include <string>
#include <vector>

#include "critorb/tpoly.hpp"

namespace critorb {

// A 1-parameter family f_t(z) = z^d + b_2(t) z^{d-2} + ... + b_d(t), monic and
// centered, with a list of marked points a_i(t) tracked through the dynamics.
struct Family {
    BiPoly f;
    std::vector<TPoly> marked;
    std::string label;
    bool marked_complete = false;  // marked points exhaust the critical points
    bool constant_ok = false;      // allow a family constant in t (e.g. z^4)

    int d() const { return static_cast<int>(f.zdegree()); }
    bool has_exact() const { return f.has_exact(); }

    // d >= 2, monic centered, marked nonempty, nonconstant in t unless flagged
    void validate() const;
};

Family make_family(BiPoly f, std::vector<TPoly> marked, std::string label,
                   bool marked_complete = false, bool constant_ok = false);

// Fixture schema: {"d": int, "zcoeffs": [[coeff,...] per z-degree], "marked":
// [[coeff,...]], "label": str}. A coeff is [re, im] with numeric entries, or
// strings "p/q" for the exact lane; exact mode triggers only when every entry
// in the file is a ratio string.
Family load_family_json(const std::string& path);
Family parse_family_json(const std::string& text);

// Convenience builders for the fixture corpus used across the test suites.
namespace families {
Family quadratic();           // z^2 + t, marked {0, t}
Family odd_cubic();           // z^3 - 3t^2 z, marked {t, -t}
Family odd_cubic_plus_i();    // z^3 - 3t^2 z + i, marked {t, -t}
Family cubic_b056();          // z^3 - 3t^2 z + 0.56, marked {t, -t}
Family per1_zero_slice();     // z^3 - 3t^2 z + t + 2t^3, marked {t, -t}
Family quartic_iterate();     // (z^2-t^2)^2 - t^2, marked {0, t, -t}
Family quartic_plus_t();      // z^4 + t, marked {0}
Family quartic_power();       // z^4 constant family, marked {0}
Family quintic();             // z^5 - t^3 z^2, marked {0, bt, b w t, b w^2 t}
}  // namespace families

}  // namespace critorb
