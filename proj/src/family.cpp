#include "critorb/family.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace critorb {

using nlohmann::json;

std::optional<BigRat> parse_ratio(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    auto is_int = [](const std::string& v) {
        if (v.empty()) return false;
        std::size_t i = (v[0] == '-' || v[0] == '+') ? 1 : 0;
        if (i == v.size()) return false;
        for (; i < v.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return std::nullopt;
            return BigRat(boost::multiprecision::cpp_int(s));
        }
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) return std::nullopt;
        boost::multiprecision::cpp_int qq(q);
        if (qq == 0) return std::nullopt;
        return BigRat(boost::multiprecision::cpp_int(p), qq);
    } catch (...) {
        return std::nullopt;
    }
}

void Family::validate() const {
    if (d() < 2) throw ConfigError("family degree must be >= 2");
    if (!f.is_monic_centered()) throw ConfigError("family must be monic and centered");
    if (marked.empty()) throw ConfigError("family needs at least one marked point");
    bool nonconstant = false;
    for (const auto& c : f.num.zcoeffs())
        if (c.degree() >= 1) nonconstant = true;
    if (!nonconstant && !constant_ok)
        throw ConfigError("family is constant in t (set the constant-family flag if intended)");
    if (f.has_exact()) {
        for (const auto& a : marked)
            if (!a.has_exact())
                throw ConfigError("exact family requires exact marked points");
    }
}

Family make_family(BiPoly f, std::vector<TPoly> marked, std::string label, bool marked_complete,
                   bool constant_ok) {
    Family fam;
    fam.f = std::move(f);
    fam.marked = std::move(marked);
    fam.label = std::move(label);
    fam.marked_complete = marked_complete;
    fam.constant_ok = constant_ok;
    fam.validate();
    return fam;
}

namespace {

struct CoeffScan {
    bool all_exact = true;
};

Cplx coeff_to_num(const json& c, CoeffScan& scan) {
    if (!c.is_array() || c.size() != 2)
        throw ConfigError("coefficient must be [re, im]");
    double parts[2];
    for (int k = 0; k < 2; ++k) {
        const json& v = c[k];
        if (v.is_number()) {
            scan.all_exact = false;
            parts[k] = v.get<double>();
        } else if (v.is_string()) {
            auto r = parse_ratio(v.get<std::string>());
            if (!r) throw ConfigError("coefficient string is not a ratio: " + v.get<std::string>());
            parts[k] = static_cast<double>(*r);
        } else {
            throw ConfigError("coefficient entries must be numbers or ratio strings");
        }
    }
    return {parts[0], parts[1]};
}

GaussRat coeff_to_exact(const json& c) {
    auto re = parse_ratio(c[0].get<std::string>());
    auto im = parse_ratio(c[1].get<std::string>());
    return {*re, *im};
}

DPoly poly_to_num(const json& arr, CoeffScan& scan) {
    std::vector<Cplx> c;
    for (const auto& e : arr) c.push_back(coeff_to_num(e, scan));
    return DPoly(std::move(c));
}

RPoly poly_to_exact(const json& arr) {
    std::vector<GaussRat> c;
    for (const auto& e : arr) c.push_back(coeff_to_exact(e));
    return RPoly(std::move(c));
}

}  // namespace

Family parse_family_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!j.contains("d") || !j.contains("zcoeffs") || !j.contains("marked"))
        throw ConfigError("fixture needs keys d, zcoeffs, marked");
    int d = j["d"].get<int>();
    const json& zc = j["zcoeffs"];
    if (!zc.is_array() || static_cast<int>(zc.size()) != d + 1)
        throw ConfigError("zcoeffs must list d+1 coefficient arrays");

    CoeffScan scan;
    std::vector<DPoly> num_zc;
    for (const auto& arr : zc) num_zc.push_back(poly_to_num(arr, scan));
    std::vector<DPoly> num_marked;
    for (const auto& arr : j["marked"]) num_marked.push_back(poly_to_num(arr, scan));
    if (num_marked.empty()) throw ConfigError("fixture needs at least one marked point");

    Family fam;
    fam.f = BiPoly(DZPoly(num_zc));
    if (scan.all_exact) {
        std::vector<RPoly> ex_zc;
        for (const auto& arr : zc) ex_zc.push_back(poly_to_exact(arr));
        fam.f.exact = RZPoly(std::move(ex_zc));
    }
    for (std::size_t i = 0; i < num_marked.size(); ++i) {
        TPoly a(num_marked[i]);
        if (scan.all_exact) a.exact = poly_to_exact(j["marked"][i]);
        fam.marked.push_back(std::move(a));
    }
    fam.label = j.value("label", std::string("family"));
    fam.marked_complete = j.value("marked_complete", false);
    fam.constant_ok = j.value("constant_family", false);
    fam.validate();
    return fam;
}

Family load_family_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open fixture: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family_json(ss.str());
}

namespace families {

namespace {
RPoly rp(std::vector<long long> ints) {
    std::vector<GaussRat> c;
    for (long long v : ints) c.emplace_back(v);
    return RPoly(std::move(c));
}
RZPoly rzp(std::vector<RPoly> zc) { return RZPoly(std::move(zc)); }
}  // namespace

Family quadratic() {
    // z^2 + t
    BiPoly f = BiPoly::from_exact(rzp({rp({0, 1}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({})), TPoly::from_exact(rp({0, 1}))},
                       "z^2+t", true);
}

Family odd_cubic() {
    // z^3 - 3 t^2 z
    BiPoly f = BiPoly::from_exact(rzp({rp({}), rp({0, 0, -3}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({0, 1})), TPoly::from_exact(rp({0, -1}))},
                       "z^3-3t^2 z", true);
}

Family odd_cubic_plus_i() {
    // z^3 - 3 t^2 z + i
    RPoly c0(std::vector<GaussRat>{GaussRat{BigRat(0), BigRat(1)}});
    BiPoly f = BiPoly::from_exact(rzp({c0, rp({0, 0, -3}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({0, 1})), TPoly::from_exact(rp({0, -1}))},
                       "z^3-3t^2 z+i", true);
}

Family cubic_b056() {
    // z^3 - 3 t^2 z + 0.56;  0.56 = 14/25
    RPoly c0(std::vector<GaussRat>{GaussRat{BigRat(14, 25), BigRat(0)}});
    BiPoly f = BiPoly::from_exact(rzp({c0, rp({0, 0, -3}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({0, 1})), TPoly::from_exact(rp({0, -1}))},
                       "z^3-3t^2 z+0.56", true);
}

Family per1_zero_slice() {
    // z^3 - 3 t^2 z + t + 2 t^3; the critical point t is fixed for all t
    BiPoly f = BiPoly::from_exact(rzp({rp({0, 1, 0, 2}), rp({0, 0, -3}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({0, 1})), TPoly::from_exact(rp({0, -1}))},
                       "per1(0) slice", true);
}

Family quartic_iterate() {
    // (z^2 - t^2)^2 - t^2 = z^4 - 2 t^2 z^2 + t^4 - t^2
    BiPoly f = BiPoly::from_exact(
        rzp({rp({0, 0, -1, 0, 1}), rp({}), rp({0, 0, -2}), rp({}), rp({1})}));
    return make_family(f,
                       {TPoly::from_exact(rp({})), TPoly::from_exact(rp({0, 1})),
                        TPoly::from_exact(rp({0, -1}))},
                       "(z^2-t^2)^2-t^2", true);
}

Family quartic_plus_t() {
    BiPoly f = BiPoly::from_exact(rzp({rp({0, 1}), rp({}), rp({}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({}))}, "z^4+t", true);
}

Family quartic_power() {
    BiPoly f = BiPoly::from_exact(rzp({rp({}), rp({}), rp({}), rp({}), rp({1})}));
    return make_family(f, {TPoly::from_exact(rp({}))}, "z^4", true, /*constant_ok=*/true);
}

Family quintic() {
    // z^5 - t^3 z^2 = z^2 (z^3 - t^3); critical points 0 and (2/5)^{1/3} w^k t
    BiPoly f = BiPoly::from_exact(
        rzp({rp({}), rp({}), rp({0, 0, 0, -1}), rp({}), rp({}), rp({1})}));
    double beta = std::cbrt(0.4);
    Cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    std::vector<TPoly> marked{TPoly::from_exact(rp({}))};
    for (int k = 0; k < 3; ++k) {
        Cplx lead = beta * std::pow(w, k);
        marked.push_back(TPoly(DPoly(std::vector<Cplx>{Cplx{0.0, 0.0}, lead})));
    }
    Family fam;
    fam.f = BiPoly(f.num);  // beta is irrational; the family runs on the double lane
    fam.marked = std::move(marked);
    fam.label = "z^5-t^3 z^2";
    fam.marked_complete = true;
    fam.validate();
    return fam;
}

}  // namespace families

}  // namespace critorb
