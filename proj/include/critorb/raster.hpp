#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "critorb/escape.hpp"
#include "critorb/family.hpp"

namespace critorb {

// Rectangular raster window with square pixels (the 5-point Laplacian
// requires them). Row 0 is the top of the image (im_max side).
struct Window {
    double re_min, re_max, im_min, im_max;
    int nx, ny;
    double h;

    Window(double rmin, double rmax, double imin, double imax, int nx_, int ny_);
    static Window square(double half_width, int res) {
        return Window(-half_width, half_width, -half_width, half_width, res, res);
    }

    Cplx center(int row, int col) const {
        return {re_min + (col + 0.5) * h, im_max - (row + 0.5) * h};
    }
    bool same_grid(const Window& o) const;
    bool symmetric() const;

    // pixel containing a point, or nothing if outside
    std::optional<std::pair<int, int>> locate(Cplx t) const;
};

enum class FieldKind { green, mass_density, indicator };

struct ScalarField {
    Window window;
    FieldKind kind;
    std::vector<double> values;       // row-major, row 0 = top
    std::vector<unsigned char> mask;  // nonempty => 1 marks cells excluded from measures

    ScalarField(Window w, FieldKind k)
        : window(w), kind(k), values(static_cast<std::size_t>(w.nx) * w.ny, 0.0) {}

    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * window.nx + col]; }
    double at(int row, int col) const {
        return values[static_cast<std::size_t>(row) * window.nx + col];
    }
    bool masked(int row, int col) const {
        return !mask.empty() && mask[static_cast<std::size_t>(row) * window.nx + col] != 0;
    }
    double max_value() const;
};

struct MassField {
    ScalarField density;  // kind = mass_density; units: mass per unit area
    double total_mass = 0.0;
};

// Pointwise escape rate of the marked point over pixel centers. Warns (via
// the returned flag in render diagnostics) when the border touches the
// bounded locus; measure mass is only captured when supp mu is interior.
ScalarField render_green(const Family& fam, const TPoly& a, const Window& w,
                         int cap = config::kRasterEscapeCap);

// Generic raster over any parameter -> value function (used by per1).
ScalarField render_field(const std::function<double(Cplx)>& f, const Window& w,
                         FieldKind kind = FieldKind::green);

bool border_all_positive(const ScalarField& field);

// mu = (1/2pi) Laplacian of the green field; 5-point stencil on interior
// cells, boundary ring excluded. Masked cells (and the ring around the
// raster) contribute no mass. total_mass = sum density * h^2.
MassField bif_measure(const ScalarField& green);

// pixel = 1 iff every marked point stays bounded at that parameter
ScalarField connectedness_locus(const Family& fam, const Window& w,
                                int cap = config::kRasterEscapeCap);

// fraction of marked orbits that escape: 0 = connectedness locus (black),
// intermediate = "gray" region, 1 = all escape
ScalarField escape_fraction_field(const Family& fam, const Window& w,
                                  int cap = config::kRasterEscapeCap);

// L1 distance sum |f1 - f2| * h^2 over unmasked interior cells; optionally
// after normalizing each field by its own total (for mass densities).
double field_l1_distance(const ScalarField& f1, const ScalarField& f2, bool normalize);

// t -> -t pushforward; requires a symmetric window.
ScalarField reflect_field(const ScalarField& f);

// P5 16-bit (big-endian), top row = im_max. Indicator fields are exported
// with 1 -> black so loci print the way the captions read.
void write_pgm16(const ScalarField& f, const std::string& path,
                 const std::vector<std::string>& comments = {});
void write_csv(const ScalarField& f, const std::string& path,
               const std::vector<std::string>& comments = {});

}  // namespace critorb
