#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "critorb/activity.hpp"
#include "critorb/family.hpp"

using namespace critorb;

namespace {

std::vector<Family> fixture_corpus() {
    return {families::quadratic(),       families::odd_cubic(),   families::odd_cubic_plus_i(),
            families::per1_zero_slice(), families::cubic_b056(),  families::quartic_iterate(),
            families::quartic_plus_t(),  families::quartic_power(), families::quintic()};
}

bool close(Cplx a, Cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("eval: direct substitution") {
    Family quad = families::quadratic();
    CHECK(close(eval(quad.f, Cplx{-1, 0}, Cplx{0, 0}), Cplx{-1, 0}));

    Family cubi = families::odd_cubic_plus_i();
    // t = i: f(z) = z^3 + 3z + i fixes -i
    CHECK(close(eval(cubi.f, Cplx{0, 1}, Cplx{0, -1}), Cplx{0, -1}));

    Family slice = families::per1_zero_slice();
    // c_1(t) = t is fixed for all t
    CHECK(close(eval(slice.f, Cplx{0.3, 0}, Cplx{0.3, 0}), Cplx{0.3, 0}));
}

TEST_CASE("iterate_symbolic: hand expansions") {
    Family quad = families::quadratic();
    // f_t(f_t(0)) = (t)^2 + t
    TPoly it2 = iterate_symbolic(quad, quad.marked[0], 2);
    TPoly expect = TPoly::from_exact(RPoly({GaussRat(0), GaussRat(1), GaussRat(1)}));
    CHECK(tpoly_equal(it2, expect));
    CHECK(it2.has_exact());
    CHECK(poly_equal(*it2.exact, *expect.exact));

    // n = 0 is the identity
    TPoly it0 = iterate_symbolic(quad, quad.marked[1], 0);
    CHECK(tpoly_equal(it0, quad.marked[1]));

    // odd cubic, a = t: t^3 - 3t^3 = -2t^3
    Family odd = families::odd_cubic();
    TPoly one = iterate_symbolic(odd, odd.marked[0], 1);
    TPoly expect_odd =
        TPoly::from_exact(RPoly({GaussRat(0), GaussRat(0), GaussRat(0), GaussRat(-2)}));
    CHECK(tpoly_equal(one, expect_odd));
}

TEST_CASE("iterate_symbolic: degree cap") {
    Family quad = families::quadratic();
    CHECK_THROWS_AS(iterate_symbolic(quad, quad.marked[1], 20, 1000), DegreeCapExceeded);
}

TEST_CASE("semigroup law over the corpus") {
    for (const Family& fam : fixture_corpus()) {
        for (const TPoly& a : fam.marked) {
            for (int n = 0; n <= 6; ++n) {
                for (int m = 0; n + m <= 6; ++m) {
                    TPoly lhs = iterate_symbolic(fam, a, n + m);
                    TPoly rhs = iterate_symbolic(fam, iterate_symbolic(fam, a, m), n);
                    CAPTURE(fam.label);
                    CHECK(tpoly_equal(lhs, rhs));
                }
            }
        }
    }
}

TEST_CASE("degree law once past the coefficient degrees") {
    for (const Family& fam : fixture_corpus()) {
        long long bmax = fam.f.num.max_lower_tdeg();
        for (const TPoly& a : fam.marked) {
            TPoly cur = a;
            long long prev = -2;
            for (int n = 0; n <= 5; ++n) {
                if (prev > bmax) {
                    CAPTURE(fam.label);
                    CHECK(cur.degree() == prev * fam.d());
                }
                prev = cur.degree();
                if (prev > 500) break;
                cur = iterate_symbolic(fam, cur, 1);
            }
        }
    }
}

TEST_CASE("eval/iterate consistency at random parameters") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (const Family& fam : fixture_corpus()) {
        for (int trial = 0; trial < 8; ++trial) {
            Cplx t{unif(rng), unif(rng)};
            const TPoly& a = fam.marked[trial % fam.marked.size()];
            int n = 1 + trial % 5;
            TPoly sym = iterate_symbolic(fam, a, n);
            Cplx direct = a(t);
            for (int k = 0; k < n; ++k) direct = eval(fam.f, t, direct);
            double scale = 1.0 + std::max(std::abs(direct), std::abs(sym(t)));
            CAPTURE(fam.label);
            CHECK(std::abs(sym(t) - direct) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("monic-centered preservation under composition") {
    for (const Family& fam : fixture_corpus()) {
        BiPoly ff = fam.f.compose(fam.f);
        CAPTURE(fam.label);
        CHECK(ff.is_monic_centered());
        CHECK(ff.zdegree() == static_cast<long long>(fam.d()) * fam.d());
    }
}

TEST_CASE("classify: quadratic marked points") {
    Family quad = families::quadratic();
    ActivityReport a0 = classify_marked_point(quad, quad.marked[0]);
    CHECK(a0.active());
    CHECK(a0.q == Rational(1, 2));
    // degree sequence of iterates of 0 begins 1, 2, 4 after the first step
    ActivityReport at = classify_marked_point(quad, quad.marked[1]);
    CHECK(at.active());
    CHECK(at.q == Rational(1));
    CHECK(at.n0 == 1);
    CHECK(at.m0 == 2);
}

TEST_CASE("classify: passive fixed critical point in the Per1(0) slice") {
    Family slice = families::per1_zero_slice();
    ActivityReport rep = classify_marked_point(slice, slice.marked[0]);
    CHECK(rep.status == ActivityReport::Status::passive_preperiodic);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->first == 1);
    CHECK(rep.witness->second == 0);
    // the witness identity holds exactly
    TPoly lhs = iterate_symbolic(slice, slice.marked[0], 1);
    CHECK(tpoly_equal(lhs, slice.marked[0]));
    CHECK(poly_equal(*lhs.exact, *slice.marked[0].exact));
}

TEST_CASE("classify: odd cubic active with q = 1") {
    Family odd = families::odd_cubic();
    ActivityReport rep = classify_marked_point(odd, odd.marked[0]);
    CHECK(rep.active());
    CHECK(rep.q == Rational(1));
    CHECK(rep.n0 == 1);
    CHECK(rep.m0 == 3);
}

TEST_CASE("classify: inconclusive reports the degree sequence") {
    Family odd = families::odd_cubic();
    TPoly one = TPoly::from_exact(RPoly({GaussRat(1)}));
    CHECK_THROWS_AS(classify_marked_point(odd, one, 1), Inconclusive);
    try {
        classify_marked_point(odd, one, 1);
    } catch (const Inconclusive& e) {
        CHECK(std::string(e.what()).find("degree sequence") != std::string::npos);
    }
}

TEST_CASE("numeric critical points") {
    Family quad = families::quadratic();
    auto c1 = numeric_critical_points(quad, Cplx{0.3, -0.2});
    REQUIRE(c1.size() == 1);
    CHECK(close(c1[0], Cplx{0, 0}, 1e-10));

    Family odd = families::odd_cubic();
    auto c2 = numeric_critical_points(odd, Cplx{2, 0});
    REQUIRE(c2.size() == 2);
    std::sort(c2.begin(), c2.end(), [](Cplx a, Cplx b) { return a.real() < b.real(); });
    CHECK(close(c2[0], Cplx{-2, 0}, 1e-9));
    CHECK(close(c2[1], Cplx{2, 0}, 1e-9));

    // z^5 - t^3 z^2 at t = 1: critical points 0 and (2/5)^{1/3} w^k
    Family quint = families::quintic();
    auto c3 = numeric_critical_points(quint, Cplx{1, 0});
    REQUIRE(c3.size() == 4);
    double beta = std::cbrt(0.4);
    for (int k = 0; k < 3; ++k) {
        Cplx target = beta * std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0);
        bool found = false;
        for (Cplx c : c3) found = found || close(c, target, 1e-9);
        CHECK(found);
    }
    bool zero_found = false;
    for (Cplx c : c3) zero_found = zero_found || close(c, Cplx{0, 0}, 1e-9);
    CHECK(zero_found);
}

TEST_CASE("family JSON fixtures round-trip with exact lane") {
    std::string text = R"({
        "d": 2,
        "zcoeffs": [[["0","0"],["1","0"]], [["0","0"]], [["1","0"]]],
        "marked": [[["0","0"]], [["0","0"],["1","0"]]],
        "label": "quad",
        "marked_complete": true
    })";
    Family fam = parse_family_json(text);
    CHECK(fam.d() == 2);
    CHECK(fam.has_exact());
    CHECK(fam.marked.size() == 2);
    CHECK(fam.marked[1].has_exact());
    CHECK(fam.label == "quad");

    // numeric entries load on the double lane only
    std::string text2 = R"({
        "d": 2,
        "zcoeffs": [[[0,0],[1,0]], [[0,0]], [[1,0]]],
        "marked": [[[0,0]]],
        "label": "quad-float"
    })";
    Family fam2 = parse_family_json(text2);
    CHECK(!fam2.has_exact());

    CHECK_THROWS_AS(parse_family_json("{\"d\": 2}"), ConfigError);
    // non-monic rejected
    std::string bad = R"({
        "d": 2,
        "zcoeffs": [[["0","0"]], [["0","0"]], [["2","0"]]],
        "marked": [[["0","0"]]],
        "label": "bad"
    })";
    CHECK_THROWS_AS(parse_family_json(bad), ConfigError);
}

TEST_CASE("tpoly equality uses a scale-free tolerance") {
    DPoly a({Cplx{1e8, 0}, Cplx{1, 0}});
    DPoly b({Cplx{1e8, 0}, Cplx{1 + 5e-3, 0}});
    // |delta| = 5e-3 <= 1e-9 * (1 + 1e8) -> equal in the scaled sense
    CHECK(poly_equal(a, b));
    DPoly c({Cplx{1, 0}, Cplx{1 + 5e-3, 0}});
    DPoly d({Cplx{1, 0}, Cplx{1, 0}});
    CHECK(!poly_equal(c, d));
}
