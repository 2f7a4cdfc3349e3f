// critorb command-line frontend: reproducible renders, root solves,
// symmetry reports, Per1 experiments, and equidistribution diagnostics.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "critorb/bottcher_series.hpp"
#include "critorb/equidist.hpp"
#include "critorb/parallel.hpp"
#include "critorb/per1.hpp"
#include "critorb/preperiodic.hpp"
#include "critorb/relations.hpp"

namespace {

constexpr const char* kVersion = "critorb 0.1.0";

using critorb::Cplx;
using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Common {
    std::string fixture;
    std::string out = "out";
    std::string config_path;
    int threads = 0;
    unsigned long long seed = 12345;

    std::string config_echo;  // canonical resolved-config string
    std::string hash;

    void finalize(const std::string& subcommand, const std::vector<std::string>& extras) {
        std::ostringstream os;
        os << subcommand << "|fixture=" << fixture << "|seed=" << seed;
        for (const auto& e : extras) os << "|" << e;
        config_echo = os.str();
        hash = hex64(fnv1a(config_echo));
        critorb::set_worker_threads(threads);
    }
    std::vector<std::string> comments() const {
        return {std::string(kVersion), "cfg=" + hash, config_echo};
    }
    void write_sidecar(const json& extra) const {
        json j = extra;
        j["version"] = kVersion;
        j["config_hash"] = hash;
        j["config"] = config_echo;
        std::ofstream f(out + ".json");
        f << j.dump(2) << "\n";
    }
};

// JSON config file provides defaults; explicitly passed flags win.
void apply_config_file(CLI::App* app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw critorb::ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw critorb::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        CLI::Option* opt = app->get_option_no_throw("--" + it.key());
        if (opt == nullptr)
            throw critorb::ConfigError("unknown config key: " + it.key());
        if (opt->count() > 0) continue;  // flag wins
        std::string v = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        opt->add_result(v);
        opt->run_callback();
    }
}

critorb::Window parse_window(const std::string& spec, int res_x, int res_y) {
    double a, b, c, d;
    char comma;
    std::istringstream is(spec);
    if (!(is >> a >> comma >> b >> comma >> c >> comma >> d))
        throw critorb::ConfigError("window must be re_min,re_max,im_min,im_max");
    return critorb::Window(a, b, c, d, res_x, res_y);
}

json window_json(const critorb::Window& w) {
    return json{{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min},
                {"im_max", w.im_max}, {"nx", w.nx},         {"ny", w.ny}};
}

int run(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - critical-orbit computations for 1-parameter polynomial families"};
    app.require_subcommand(1);

    // ---- render ----
    auto* render = app.add_subcommand("render", "raster a boundedness/connectedness locus");
    Common rc;
    std::string r_window = "-2.0,2.0,-2.0,2.0";
    int r_res = 512, r_res_y = 0, r_cap = critorb::config::kRasterEscapeCap, r_marked = 0;
    std::string r_mode = "green";
    bool r_csv = false;
    render->add_option("--fixture", rc.fixture, "family fixture JSON")->required();
    render->add_option("--window", r_window, "re_min,re_max,im_min,im_max");
    render->add_option("--res", r_res, "horizontal resolution");
    render->add_option("--res-y", r_res_y, "vertical resolution (default: square window)");
    render->add_option("--cap", r_cap, "iteration cap per pixel");
    render->add_option("--marked", r_marked, "marked-point index for green mode");
    render->add_option("--mode", r_mode, "green | connectedness | locus");
    render->add_flag("--csv", r_csv, "also dump re,im,value CSV");
    render->add_option("--out", rc.out, "output path prefix");
    render->add_option("--threads", rc.threads, "worker cap (0 = logical cores)");
    render->add_option("--seed", rc.seed, "rng seed (echoed into outputs)");
    render->add_option("--config", rc.config_path, "JSON config file (flags win)");

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "preperiodic parameters / PCF harvest");
    Common sc;
    int s_driver = 0, s_nmax = 4;
    solve->add_option("--fixture", sc.fixture)->required();
    solve->add_option("--driver", s_driver, "marked-point index driving the equations");
    solve->add_option("--nmax", s_nmax, "all pairs n <= nmax, m < n");
    solve->add_option("--out", sc.out);
    solve->add_option("--threads", sc.threads);
    solve->add_option("--seed", sc.seed);
    solve->add_option("--config", sc.config_path);

    // ---- relate ----
    auto* relate = app.add_subcommand("relate", "symmetries and critical orbit relations");
    Common lc;
    int l_kmax = 3, l_nmax = 3, l_emax = 3;
    relate->add_option("--fixture", lc.fixture)->required();
    relate->add_option("--kmax", l_kmax, "search h commuting with f^k, k <= kmax");
    relate->add_option("--nmax", l_nmax, "orbit relation search depth");
    relate->add_option("--emax", l_emax, "iterative-root exponents to try");
    relate->add_option("--out", lc.out);
    relate->add_option("--threads", lc.threads);
    relate->add_option("--seed", lc.seed);
    relate->add_option("--config", lc.config_path);

    // ---- per1 ----
    auto* per1 = app.add_subcommand("per1", "the Per1(lambda) cubic family");
    Common pc;
    double p_lam_re = 6.0, p_lam_im = 0.0;
    std::string p_window = "-2.0,2.0,-0.5,0.5";
    int p_grid = 800, p_grid_y = 0, p_cap = critorb::config::kRasterEscapeCap;
    bool p_search = false, p_measures = false, p_robin = false;
    per1->add_option("--lambda-re", p_lam_re, "Re lambda");
    per1->add_option("--lambda-im", p_lam_im, "Im lambda");
    per1->add_option("--lambda", p_lam_re, "alias for --lambda-re");
    per1->add_option("--window", p_window);
    per1->add_option("--grid", p_grid, "horizontal grid count");
    per1->add_option("--grid-y", p_grid_y, "vertical grid count");
    per1->add_option("--cap", p_cap);
    per1->add_flag("--pcf-search", p_search, "grid scan + Newton for PCF parameters");
    per1->add_flag("--render-measures", p_measures, "mu+/mu- rasters and masses");
    per1->add_flag("--robin", p_robin, "ring-averaged G+ constant term");
    per1->add_option("--out", pc.out);
    per1->add_option("--threads", pc.threads);
    per1->add_option("--seed", pc.seed);
    per1->add_option("--config", pc.config_path);

    // ---- equidist ----
    auto* eq = app.add_subcommand("equidist", "potential-theoretic diagnostics");
    Common ec;
    int e_marked = 0, e_n = 10;
    std::string e_probes = "2,0";
    eq->add_option("--fixture", ec.fixture)->required();
    eq->add_option("--marked", e_marked, "marked point for the Green spec");
    eq->add_option("--n", e_n, "S = roots of f^n(a) = 0");
    eq->add_option("--probes", e_probes, "semicolon-separated re,im probe list");
    eq->add_option("--out", ec.out);
    eq->add_option("--threads", ec.threads);
    eq->add_option("--seed", ec.seed);
    eq->add_option("--config", ec.config_path);

    // ---- series ----
    auto* series = app.add_subcommand("series", "Boettcher series dump");
    Common xc;
    int x_smax = 12;
    series->add_option("--fixture", xc.fixture)->required();
    series->add_option("--smax", x_smax, "number of tail coefficients");
    series->add_option("--out", xc.out);
    series->add_option("--threads", xc.threads);
    series->add_option("--seed", xc.seed);
    series->add_option("--config", xc.config_path);

    app.parse(argc, argv);

    if (render->parsed()) {
        if (!rc.config_path.empty()) apply_config_file(render, rc.config_path);
        if (r_res_y <= 0) {
            critorb::Window probe = parse_window(r_window, 2, 2);
            double aspect = (probe.im_max - probe.im_min) / (probe.re_max - probe.re_min);
            r_res_y = std::max(2, static_cast<int>(std::lround(r_res * aspect)));
        }
        rc.finalize("render", {"window=" + r_window, "res=" + std::to_string(r_res),
                               "res_y=" + std::to_string(r_res_y), "cap=" + std::to_string(r_cap),
                               "marked=" + std::to_string(r_marked), "mode=" + r_mode});
        critorb::Family fam = critorb::load_family_json(rc.fixture);
        critorb::Window w = parse_window(r_window, r_res, r_res_y);
        critorb::ScalarField field = [&] {
            if (r_mode == "green")
                return critorb::render_green(
                    fam, fam.marked.at(static_cast<std::size_t>(r_marked)), w, r_cap);
            if (r_mode == "connectedness") return critorb::connectedness_locus(fam, w, r_cap);
            if (r_mode == "locus") return critorb::escape_fraction_field(fam, w, r_cap);
            throw critorb::ConfigError("unknown render mode: " + r_mode);
        }();
        if (field.kind == critorb::FieldKind::green && !critorb::border_all_positive(field))
            std::cerr << "warning: window border touches the bounded locus; "
                         "Laplacian mass would be undercounted\n";
        critorb::write_pgm16(field, rc.out + ".pgm", rc.comments());
        if (r_csv) critorb::write_csv(field, rc.out + ".csv", rc.comments());
        rc.write_sidecar(json{{"window", window_json(w)},
                              {"kind", r_mode},
                              {"cap", r_cap},
                              {"fixture_label", fam.label}});
        return 0;
    }

    if (solve->parsed()) {
        if (!sc.config_path.empty()) apply_config_file(solve, sc.config_path);
        sc.finalize("solve",
                    {"driver=" + std::to_string(s_driver), "nmax=" + std::to_string(s_nmax)});
        critorb::Family fam = critorb::load_family_json(sc.fixture);
        critorb::PcfResult res =
            critorb::find_pcf(fam, critorb::all_pairs_driver(s_driver, s_nmax));
        critorb::write_rootset_csv(res.pcf, sc.out + ".csv", sc.comments());
        json log = json::array();
        for (const auto& e : res.log) {
            json verdicts = json::array();
            for (const auto& o : e.others)
                verdicts.push_back(o.verdict == critorb::OrbitVerdict::preperiodic ? "preperiodic"
                                   : o.verdict == critorb::OrbitVerdict::escaping  ? "escaping"
                                                                                   : "undecided");
            log.push_back({{"t", {e.t.real(), e.t.imag()}},
                           {"source", e.source},
                           {"pcf", e.pcf},
                           {"other_verdicts", verdicts}});
        }
        sc.write_sidecar(json{{"pcf_count", res.pcf.roots.size()},
                              {"candidates", res.log.size()},
                              {"log", log}});
        std::cout << res.pcf.roots.size() << " certified PCF parameters -> " << sc.out
                  << ".csv\n";
        return 0;
    }

    if (relate->parsed()) {
        if (!lc.config_path.empty()) apply_config_file(relate, lc.config_path);
        lc.finalize("relate", {"kmax=" + std::to_string(l_kmax), "nmax=" + std::to_string(l_nmax),
                               "emax=" + std::to_string(l_emax)});
        critorb::Family fam = critorb::load_family_json(lc.fixture);
        json out;
        auto cands = critorb::find_affine_symmetry(fam, l_kmax);
        json jc = json::array();
        for (const auto& cand : cands) {
            json verified = json::array();
            for (std::size_t i = 0; i < fam.marked.size(); ++i)
                for (std::size_t j = 0; j < fam.marked.size(); ++j)
                    for (int n = 0; n <= l_nmax && i != j; ++n)
                        if (critorb::check_orbit_relation(fam, cand, static_cast<int>(i),
                                                          static_cast<int>(j), n, n))
                            verified.push_back({{"i", i}, {"j", j}, {"n", n}, {"m", n}});
            jc.push_back({{"kind", "affine"},
                          {"k", cand.k},
                          {"u_order", cand.u_order},
                          {"u_power", cand.u_power},
                          {"h", "u*z"},
                          {"relations", verified}});
        }
        out["affine"] = jc;
        json jr = json::array();
        for (int e = 2; e <= l_emax; ++e) {
            try {
                auto g = critorb::functional_root(fam, e);
                if (g) {
                    json zc = json::array();
                    for (const auto& c : g->h.num.zcoeffs()) {
                        json arr = json::array();
                        for (const auto& v : c.coeffs()) arr.push_back({v.real(), v.imag()});
                        zc.push_back(arr);
                    }
                    jr.push_back({{"e", e}, {"zcoeffs", zc}});
                }
            } catch (const critorb::NoIntegerRootDegree&) {
            }
        }
        out["shared_iterate"] = jr;
        lc.write_sidecar(out);
        std::cout << cands.size() << " affine symmetries, " << jr.size()
                  << " iterative roots -> " << lc.out << ".json\n";
        return 0;
    }

    if (per1->parsed()) {
        if (!pc.config_path.empty()) apply_config_file(per1, pc.config_path);
        Cplx lambda{p_lam_re, p_lam_im};
        if (p_grid_y <= 0) {
            critorb::Window probe = parse_window(p_window, 2, 2);
            double aspect = (probe.im_max - probe.im_min) / (probe.re_max - probe.re_min);
            p_grid_y = std::max(2, static_cast<int>(std::lround(p_grid * aspect)));
        }
        pc.fixture = "per1";
        pc.finalize("per1", {"lambda_re=" + std::to_string(p_lam_re),
                             "lambda_im=" + std::to_string(p_lam_im), "window=" + p_window,
                             "grid=" + std::to_string(p_grid),
                             "grid_y=" + std::to_string(p_grid_y), "cap=" + std::to_string(p_cap)});
        json sidecar{{"lambda", {p_lam_re, p_lam_im}}};
        if (p_robin) {
            critorb::Per1Family fam = critorb::make_per1(lambda);
            double gamma = critorb::per1_robin_gamma(fam);
            sidecar["robin_gamma"] = gamma;
            sidecar["robin_gamma_formula"] = critorb::per1_gamma_formula(lambda);
            std::cout << "gamma = " << gamma << "\n";
        }
        if (p_measures) {
            critorb::Per1Family fam = critorb::make_per1(lambda);
            critorb::Window w = parse_window(p_window, p_grid, p_grid_y);
            auto meas = critorb::per1_measures(fam, w, p_cap);
            critorb::write_pgm16(meas.green_plus, pc.out + "_plus.pgm", pc.comments());
            critorb::write_pgm16(meas.green_minus, pc.out + "_minus.pgm", pc.comments());
            double l1 = critorb::field_l1_distance(meas.mu_plus.density, meas.mu_minus.density,
                                                   true);
            sidecar["mass_plus"] = meas.mu_plus.total_mass;
            sidecar["mass_minus"] = meas.mu_minus.total_mass;
            sidecar["normalized_l1"] = l1;
            sidecar["window"] = window_json(w);
            std::cout << "mass(mu+) = " << meas.mu_plus.total_mass
                      << "  mass(mu-) = " << meas.mu_minus.total_mass << "  L1 = " << l1 << "\n";
        }
        if (p_search) {
            critorb::Window w = parse_window(p_window, p_grid, p_grid_y);
            critorb::RootSet rs = critorb::per1_pcf_search(lambda, w);
            critorb::write_rootset_csv(rs, pc.out + ".csv", pc.comments());
            sidecar["pcf_count"] = rs.roots.size();
            sidecar["window"] = window_json(w);
            std::cout << rs.roots.size() << " PCF parameters -> " << pc.out << ".csv\n";
        }
        pc.write_sidecar(sidecar);
        return 0;
    }

    if (eq->parsed()) {
        if (!ec.config_path.empty()) apply_config_file(eq, ec.config_path);
        ec.finalize("equidist", {"marked=" + std::to_string(e_marked), "n=" + std::to_string(e_n),
                                 "probes=" + e_probes});
        critorb::Family fam = critorb::load_family_json(ec.fixture);
        const critorb::TPoly& a = fam.marked.at(static_cast<std::size_t>(e_marked));
        critorb::GreenSpec spec = critorb::green_spec(fam, a);
        critorb::TPoly iter = critorb::iterate_symbolic(fam, a, e_n);
        critorb::RootSet S = critorb::solve_roots(iter, {}, "f^" + std::to_string(e_n) + "(a)=0");
        std::vector<Cplx> probes;
        std::istringstream is(e_probes);
        std::string tok;
        while (std::getline(is, tok, ';')) {
            double re, im;
            char comma;
            std::istringstream ts(tok);
            if (!(ts >> re >> comma >> im))
                throw critorb::ConfigError("probe must be re,im");
            probes.emplace_back(re, im);
        }
        critorb::EnergyReport rep = critorb::potential_discrepancy(spec, S, probes);
        critorb::EnergyReport en = critorb::set_energy(spec, S);
        rep.energy = en.energy;
        std::ofstream f(ec.out + ".json");
        json j = json::parse(critorb::energy_report_json(rep));
        j["version"] = kVersion;
        j["config_hash"] = ec.hash;
        j["config"] = ec.config_echo;
        f << j.dump(2) << "\n";
        std::cout << "max |empirical - predicted| = " << rep.max_discrepancy << " over "
                  << probes.size() << " probes -> " << ec.out << ".json\n";
        return 0;
    }

    if (series->parsed()) {
        if (!xc.config_path.empty()) apply_config_file(series, xc.config_path);
        xc.finalize("series", {"smax=" + std::to_string(x_smax)});
        critorb::Family fam = critorb::load_family_json(xc.fixture);
        critorb::TruncatedBottcher tb = critorb::bottcher_series(fam, x_smax);
        std::ofstream f(xc.out + ".json");
        json j = json::parse(critorb::series_json(tb));
        j["version"] = kVersion;
        j["config_hash"] = xc.hash;
        j["config"] = xc.config_echo;
        f << j.dump(2) << "\n";
        std::cout << "g_1..g_" << x_smax << " -> " << xc.out << ".json\n";
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        int code = dummy.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const critorb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const critorb::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
