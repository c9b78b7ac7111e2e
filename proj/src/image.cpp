#include "mvg/image.hpp"

#include <cmath>
#include <string>

#include "mvg/error.hpp"

namespace mvg {

MvImage::MvImage(Manifold m, std::size_t rows, std::size_t cols)
    : manifold_(m), rows_(rows), cols_(cols), data_(rows * cols * m.point_len(), 0.0) {
    if (rows == 0 || cols == 0) throw DimensionError("image dimensions must be positive");
}

MvImage::MvImage(Manifold m, std::size_t rows, std::size_t cols, std::vector<double> data)
    : manifold_(m), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw DimensionError("image dimensions must be positive");
    if (data_.size() != rows * cols * m.point_len())
        throw DimensionError("image buffer has " + std::to_string(data_.size()) + " values, expected " +
                             std::to_string(rows * cols * m.point_len()));
}

void MvImage::set(Vertex v, std::span<const double> p) {
    if (p.size() != manifold_.point_len()) throw DimensionError("point length mismatch");
    auto dst = at(v);
    for (std::size_t k = 0; k < p.size(); ++k) dst[k] = p[k];
}

void MvImage::validate() const {
    for (Vertex v = 0; v < size(); ++v) {
        try {
            manifold_.check_point(at(v));
        } catch (const std::exception& e) {
            throw DataError("invalid pixel (" + std::to_string(v / cols_) + "," + std::to_string(v % cols_) +
                            "): " + e.what());
        }
    }
}

Mask::Mask(std::size_t rows, std::size_t cols, std::vector<bool> known)
    : rows_(rows), cols_(cols), known_(std::move(known)) {
    if (rows == 0 || cols == 0) throw DimensionError("mask dimensions must be positive");
    if (known_.size() != rows * cols) throw DimensionError("mask size does not match rows*cols");
    bool any = false;
    for (bool k : known_) any = any || k;
    if (!any) throw DataError("mask has no known pixel");
}

Mask Mask::all_known(std::size_t rows, std::size_t cols) { return Mask(rows, cols, std::vector<bool>(rows * cols, true)); }

std::size_t Mask::unknown_count() const {
    std::size_t n = 0;
    for (bool k : known_) n += k ? 0 : 1;
    return n;
}

std::vector<Vertex> Mask::unknown_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < known_.size(); ++v)
        if (!known_[v]) out.push_back(v);
    return out;
}

double image_distance(const MvImage& f, const MvImage& g, std::span<const Vertex> subset) {
    if (!(f.manifold() == g.manifold()) || f.rows() != g.rows() || f.cols() != g.cols())
        throw DimensionError("image_distance: shape or manifold mismatch");
    if (subset.empty()) throw DimensionError("image_distance: empty vertex subset");
    double s = 0.0;
    for (Vertex v : subset) {
        if (v >= f.size()) throw DimensionError("image_distance: vertex out of range");
        const double d = f.manifold().distance(f.at(v), g.at(v));
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace mvg
