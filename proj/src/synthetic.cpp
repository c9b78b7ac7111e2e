#include "mvg/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mvg/error.hpp"

namespace mvg {

namespace {

constexpr double kPi = std::numbers::pi;

int lines_passed(std::size_t x, std::size_t n) { return (x >= n / 3 ? 1 : 0) + (x >= 2 * n / 3 ? 1 : 0); }

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows < 3 || cols < 3)
        throw DimensionError("synthetic images need at least 3x3 pixels, got " + std::to_string(rows) + "x" +
                             std::to_string(cols));
}

}  // namespace

MvImage generate_sphere_image(std::size_t rows, std::size_t cols) {
    check_dims(rows, cols);
    MvImage img(Manifold::sphere2(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(cols);
            const int jumps = lines_passed(i, rows) + lines_passed(j, cols);
            const double phi = kPi / 4.0 + (kPi / 8.0) * std::sin(2.0 * kPi * static_cast<double>(i) / static_cast<double>(rows)) -
                               (kPi / 16.0) * jumps;
            const double p[3] = {std::sin(phi) * std::cos(theta), std::sin(phi) * std::sin(theta), std::cos(phi)};
            img.set(i * cols + j, p);
        }
    }
    return img;
}

MvImage generate_spd_image(std::size_t rows, std::size_t cols) {
    check_dims(rows, cols);
    MvImage img(Manifold::spd(2), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            // Normalized coordinates in (-1/2, 1/2).
            const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(rows) - 0.5;
            const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(cols) - 0.5;
            const double r2 = x * x + (y - 0.25) * (y - 0.25);
            const double a = 0.5 + 2.5 * std::exp(-r2 / (2.0 * 0.15 * 0.15));
            double alpha = 0.5 * kPi * (x + y);
            if (j >= cols / 2) alpha += kPi / 3.0;
            const double c = std::cos(alpha);
            const double s = std::sin(alpha);
            const double l1 = 1.0 + a;
            const double l2 = 1.0;
            // R diag(l1, l2) R^T
            const double m00 = l1 * c * c + l2 * s * s;
            const double m01 = (l1 - l2) * c * s;
            const double m11 = l1 * s * s + l2 * c * c;
            const double p[4] = {m00, m01, m01, m11};
            img.set(i * cols + j, p);
        }
    }
    return img;
}

Mask cut_mask(std::size_t rows, std::size_t cols, std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) {
    if (rows == 0 || cols == 0) throw DimensionError("cut_mask: empty grid");
    if (h == 0 || w == 0 || i0 + h > rows || j0 + w > cols)
        throw DimensionError("cut_mask: rectangle (" + std::to_string(i0) + "," + std::to_string(j0) + "," +
                             std::to_string(h) + "," + std::to_string(w) + ") does not fit a " +
                             std::to_string(rows) + "x" + std::to_string(cols) + " grid");
    std::vector<bool> known(rows * cols, true);
    for (std::size_t i = i0; i < i0 + h; ++i)
        for (std::size_t j = j0; j < j0 + w; ++j) known[i * cols + j] = false;
    return Mask(rows, cols, std::move(known));
}

}  // namespace mvg
