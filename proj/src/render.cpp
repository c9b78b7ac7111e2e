#include "mvg/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mvg/error.hpp"
#include "mvg/io.hpp"
#include "mvg/sym_eig.hpp"

namespace mvg {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 3> hsv(double h_deg, double s, double v) {
    const double h = std::fmod(std::fmod(h_deg, 360.0) + 360.0, 360.0) / 60.0;
    const double c = v * s;
    const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
    std::array<double, 3> rgb{};
    switch (static_cast<int>(h)) {
        case 0: rgb = {c, x, 0}; break;
        case 1: rgb = {x, c, 0}; break;
        case 2: rgb = {0, c, x}; break;
        case 3: rgb = {0, x, c}; break;
        case 4: rgb = {x, 0, c}; break;
        default: rgb = {c, 0, x}; break;
    }
    const double m = v - c;
    for (double& ch : rgb) ch += m;
    return rgb;
}

double luminance(const std::array<double, 3>& c) { return 0.2126 * c[0] + 0.7152 * c[1] + 0.0722 * c[2]; }

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

Rgb sphere_color(std::span<const double> p) {
    const double z = std::clamp(p[2], -1.0, 1.0);
    const double t = 0.5 * (z + 1.0);
    const double mix = 0.4 * std::sqrt(std::max(0.0, 1.0 - z * z));
    const auto tint = hsv(std::atan2(p[1], p[0]) * 180.0 / kPi, 1.0, 1.0);
    std::array<double, 3> base{}, c{};
    for (int k = 0; k < 3; ++k) {
        base[k] = (1.0 - t) * kSouthColor[k] + t * kNorthColor[k];
        c[k] = (1.0 - mix) * base[k] + mix * 255.0 * tint[k];
    }
    // Keep the luminance of the elevation ramp.
    const double lc = luminance(c);
    if (lc > 0.0)
        for (double& ch : c) ch *= luminance(base) / lc;
    return {to_byte(c[0]), to_byte(c[1]), to_byte(c[2])};
}

double geodesic_anisotropy(std::span<const double> spd, std::size_t n) {
    const SymEig e = sym_eig(spd, n);
    double mean = 0.0;
    for (double l : e.values) {
        if (!(l > 0.0)) throw NotSpdError("geodesic_anisotropy: matrix is not positive definite");
        mean += std::log(l);
    }
    mean /= static_cast<double>(n);
    double s = 0.0;
    for (double l : e.values) s += (std::log(l) - mean) * (std::log(l) - mean);
    return std::sqrt(s);
}

Rgb anisotropy_color(double ga) {
    const double t = std::clamp(ga / 1.5, 0.0, 1.0);
    const auto c = hsv(240.0 * (1.0 - t), 0.85, 0.95);
    return {to_byte(255.0 * c[0]), to_byte(255.0 * c[1]), to_byte(255.0 * c[2])};
}

std::string render_sphere_ppm(const MvImage& img, const Mask* mask, std::size_t scale) {
    if (img.manifold().kind() != ManifoldKind::sphere2) throw DataError("PPM rendering needs a sphere2 image");
    if (mask && (mask->rows() != img.rows() || mask->cols() != img.cols())) throw DimensionError("render: mask shape");
    scale = std::max<std::size_t>(scale, 1);
    const std::size_t w = img.cols() * scale;
    const std::size_t h = img.rows() * scale;
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + 3 * w * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const Vertex v = (y / scale) * img.cols() + x / scale;
            const Rgb c = (mask && !mask->known(v)) ? kUnknownGray : sphere_color(img.at(v));
            out.append(reinterpret_cast<const char*>(c.data()), 3);
        }
    }
    return out;
}

std::string render_spd_svg(const MvImage& img, const Mask* mask, std::size_t cell) {
    const Manifold& m = img.manifold();
    if (m.kind() != ManifoldKind::spd || m.param() != 2) throw DataError("SVG rendering needs an spd(2) image");
    if (mask && (mask->rows() != img.rows() || mask->cols() != img.cols())) throw DimensionError("render: mask shape");
    cell = std::max<std::size_t>(cell, 2);

    double lmax = 0.0;
    for (Vertex v = 0; v < img.size(); ++v) {
        if (mask && !mask->known(v)) continue;
        lmax = std::max(lmax, sym_eig(img.at(v), 2).values[1]);
    }
    const double c = static_cast<double>(cell);
    const double unit = lmax > 0.0 ? 0.45 * c / lmax : 0.0;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(img.cols() * cell) +
                      "\" height=\"" + std::to_string(img.rows() * cell) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < img.rows(); ++i) {
        for (std::size_t j = 0; j < img.cols(); ++j) {
            const Vertex v = i * img.cols() + j;
            if (mask && !mask->known(v)) {
                out += "<rect x=\"" + fmt(j * c) + "\" y=\"" + fmt(i * c) + "\" width=\"" + fmt(c) + "\" height=\"" +
                       fmt(c) + "\" fill=\"rgb(128,128,128)\"/>\n";
                continue;
            }
            const SymEig e = sym_eig(img.at(v), 2);
            // Column 1 holds the major axis; matrix index 0 is horizontal.
            const double angle = std::atan2(e.vectors[2 + 1], e.vectors[0 + 1]) * 180.0 / kPi;
            const Rgb col = anisotropy_color(geodesic_anisotropy(img.at(v), 2));
            const double cx = (static_cast<double>(j) + 0.5) * c;
            const double cy = (static_cast<double>(i) + 0.5) * c;
            out += "<ellipse cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" rx=\"" + fmt(unit * e.values[1]) +
                   "\" ry=\"" + fmt(unit * e.values[0]) + "\" transform=\"rotate(" + fmt(angle) + " " + fmt(cx) +
                   " " + fmt(cy) + ")\" fill=\"rgb(" + std::to_string(col[0]) + "," + std::to_string(col[1]) + "," +
                   std::to_string(col[2]) + ")\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

void render(const MvImage& img, const Mask* mask, const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    const Manifold& m = img.manifold();
    if (ext == ".ppm" && m.kind() == ManifoldKind::sphere2) return write_file(path, render_sphere_ppm(img, mask));
    if (ext == ".svg" && m.kind() == ManifoldKind::spd && m.param() == 2)
        return write_file(path, render_spd_svg(img, mask));
    throw DataError("render: no '" + ext + "' style for " + m.name() + " images (use .ppm for sphere2, .svg for spd(2))");
}

}  // namespace mvg
