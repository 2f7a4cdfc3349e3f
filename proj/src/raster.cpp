#include "critorb/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>

#include "critorb/parallel.hpp"

namespace critorb {

Window::Window(double rmin, double rmax, double imin, double imax, int nx_, int ny_)
    : re_min(rmin), re_max(rmax), im_min(imin), im_max(imax), nx(nx_), ny(ny_) {
    if (nx < 2 || ny < 2) throw ConfigError("window needs nx, ny >= 2");
    if (!(re_min < re_max) || !(im_min < im_max))
        throw ConfigError("window needs re_min < re_max and im_min < im_max");
    double hx = (re_max - re_min) / nx;
    double hy = (im_max - im_min) / ny;
    if (std::abs(hx - hy) > 1e-12 * std::max(std::abs(hx), std::abs(hy)))
        throw ConfigError("window pixels must be square (h_x = h_y)");
    h = hx;
}

bool Window::same_grid(const Window& o) const {
    return nx == o.nx && ny == o.ny && std::abs(re_min - o.re_min) < 1e-12 &&
           std::abs(re_max - o.re_max) < 1e-12 && std::abs(im_min - o.im_min) < 1e-12 &&
           std::abs(im_max - o.im_max) < 1e-12;
}

bool Window::symmetric() const {
    return std::abs(re_min + re_max) < 1e-12 && std::abs(im_min + im_max) < 1e-12;
}

std::optional<std::pair<int, int>> Window::locate(Cplx t) const {
    int col = static_cast<int>(std::floor((t.real() - re_min) / h));
    int row = static_cast<int>(std::floor((im_max - t.imag()) / h));
    if (col < 0 || col >= nx || row < 0 || row >= ny) return std::nullopt;
    return std::make_pair(row, col);
}

double ScalarField::max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

ScalarField render_field(const std::function<double(Cplx)>& f, const Window& w, FieldKind kind) {
    ScalarField out(w, kind);
    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col)
            out.at(static_cast<int>(row), col) = f(w.center(static_cast<int>(row), col));
    });
    return out;
}

ScalarField render_green(const Family& fam, const TPoly& a, const Window& w, int cap) {
    ScalarField out(w, FieldKind::green);
    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col) {
            Cplx t = w.center(static_cast<int>(row), col);
            PolyMap m = family_map_at(fam, t);
            out.at(static_cast<int>(row), col) = escape_orbit(m, a(t), cap).g;
        }
    });
    return out;
}

bool border_all_positive(const ScalarField& field) {
    const Window& w = field.window;
    for (int col = 0; col < w.nx; ++col)
        if (field.at(0, col) <= 0.0 || field.at(w.ny - 1, col) <= 0.0) return false;
    for (int row = 0; row < w.ny; ++row)
        if (field.at(row, 0) <= 0.0 || field.at(row, w.nx - 1) <= 0.0) return false;
    return true;
}

MassField bif_measure(const ScalarField& green) {
    if (green.kind != FieldKind::green)
        throw ConfigError("bif_measure expects a green-kind field");
    const Window& w = green.window;
    MassField out{ScalarField(w, FieldKind::mass_density), 0.0};
    out.density.mask = green.mask;
    const double inv = 1.0 / (2.0 * std::numbers::pi * w.h * w.h);
    double mass = 0.0;
    for (int r = 1; r + 1 < w.ny; ++r) {
        for (int c = 1; c + 1 < w.nx; ++c) {
            if (green.masked(r, c)) continue;
            double lap = green.at(r - 1, c) + green.at(r + 1, c) + green.at(r, c - 1) +
                         green.at(r, c + 1) - 4.0 * green.at(r, c);
            double density = lap * inv;
            out.density.at(r, c) = density;
            mass += density * w.h * w.h;
        }
    }
    out.total_mass = mass;
    return out;
}

ScalarField connectedness_locus(const Family& fam, const Window& w, int cap) {
    if (!fam.marked_complete)
        throw ConfigError("connectedness locus needs the marked points to exhaust the critical points");
    ScalarField out(w, FieldKind::indicator);
    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col) {
            Cplx t = w.center(static_cast<int>(row), col);
            PolyMap m = family_map_at(fam, t);
            bool all_bounded = true;
            for (const auto& a : fam.marked) {
                if (escape_orbit(m, a(t), cap).escaped) {
                    all_bounded = false;
                    break;
                }
            }
            out.at(static_cast<int>(row), col) = all_bounded ? 1.0 : 0.0;
        }
    });
    return out;
}

ScalarField escape_fraction_field(const Family& fam, const Window& w, int cap) {
    ScalarField out(w, FieldKind::indicator);
    parallel_for(0, static_cast<std::size_t>(w.ny), [&](std::size_t row) {
        for (int col = 0; col < w.nx; ++col) {
            Cplx t = w.center(static_cast<int>(row), col);
            PolyMap m = family_map_at(fam, t);
            int escaped = 0;
            for (const auto& a : fam.marked)
                if (escape_orbit(m, a(t), cap).escaped) ++escaped;
            out.at(static_cast<int>(row), col) =
                static_cast<double>(escaped) / static_cast<double>(fam.marked.size());
        }
    });
    return out;
}

double field_l1_distance(const ScalarField& f1, const ScalarField& f2, bool normalize) {
    if (!f1.window.same_grid(f2.window))
        throw WindowMismatch("fields live on different windows");
    const Window& w = f1.window;
    double n1 = 1.0, n2 = 1.0;
    if (normalize) {
        double s1 = 0.0, s2 = 0.0;
        for (int r = 1; r + 1 < w.ny; ++r)
            for (int c = 1; c + 1 < w.nx; ++c) {
                if (f1.masked(r, c) || f2.masked(r, c)) continue;
                s1 += f1.at(r, c);
                s2 += f2.at(r, c);
            }
        if (s1 == 0.0 || s2 == 0.0) throw ConfigError("cannot normalize a zero-mass field");
        n1 = 1.0 / (s1 * w.h * w.h);
        n2 = 1.0 / (s2 * w.h * w.h);
    }
    double dist = 0.0;
    for (int r = 1; r + 1 < w.ny; ++r)
        for (int c = 1; c + 1 < w.nx; ++c) {
            if (f1.masked(r, c) || f2.masked(r, c)) continue;
            dist += std::abs(f1.at(r, c) * n1 - f2.at(r, c) * n2) * w.h * w.h;
        }
    return dist;
}

ScalarField reflect_field(const ScalarField& f) {
    if (!f.window.symmetric())
        throw WindowMismatch("t -> -t reflection needs a window symmetric about 0");
    ScalarField out(f.window, f.kind);
    out.mask = f.mask;
    for (int r = 0; r < f.window.ny; ++r)
        for (int c = 0; c < f.window.nx; ++c) {
            out.at(r, c) = f.at(f.window.ny - 1 - r, f.window.nx - 1 - c);
            if (!f.mask.empty())
                out.mask[static_cast<std::size_t>(r) * f.window.nx + c] =
                    f.mask[static_cast<std::size_t>(f.window.ny - 1 - r) * f.window.nx +
                           (f.window.nx - 1 - c)];
        }
    return out;
}

void write_pgm16(const ScalarField& f, const std::string& path,
                 const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << "P5\n";
    for (const auto& c : comments) out << "# " << c << "\n";
    out << f.window.nx << " " << f.window.ny << "\n65535\n";
    double vmax = f.max_value();
    if (vmax <= 0.0) vmax = 1.0;
    const bool invert = (f.kind == FieldKind::indicator);
    for (int r = 0; r < f.window.ny; ++r) {
        for (int c = 0; c < f.window.nx; ++c) {
            double v = f.at(r, c) / vmax;
            v = std::clamp(v, 0.0, 1.0);
            if (invert) v = 1.0 - v;
            auto px = static_cast<std::uint16_t>(std::lround(v * 65535.0));
            unsigned char hi = static_cast<unsigned char>(px >> 8);
            unsigned char lo = static_cast<unsigned char>(px & 0xff);
            out.put(static_cast<char>(hi));
            out.put(static_cast<char>(lo));
        }
    }
}

void write_csv(const ScalarField& f, const std::string& path,
               const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "re,im,value\n";
    out.precision(17);
    for (int r = 0; r < f.window.ny; ++r)
        for (int c = 0; c < f.window.nx; ++c) {
            Cplx t = f.window.center(r, c);
            out << t.real() << "," << t.imag() << "," << f.at(r, c) << "\n";
        }
}

}  // namespace critorb
