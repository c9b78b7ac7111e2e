#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvg/manifold.hpp"

namespace mvg {

using Vertex = std::size_t;

/// rows x cols grid of manifold points, row-major; pixel (i, j) is vertex
/// i * cols + j.
class MvImage {
public:
    MvImage(Manifold m, std::size_t rows, std::size_t cols);
    MvImage(Manifold m, std::size_t rows, std::size_t cols, std::vector<double> data);

    const Manifold& manifold() const { return manifold_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return rows_ * cols_; }

    std::span<const double> at(Vertex v) const {
        return {data_.data() + v * manifold_.point_len(), manifold_.point_len()};
    }
    std::span<double> at(Vertex v) { return {data_.data() + v * manifold_.point_len(), manifold_.point_len()}; }
    std::span<const double> at(std::size_t i, std::size_t j) const { return at(i * cols_ + j); }

    Point point(Vertex v) const {
        const auto s = at(v);
        return {s.begin(), s.end()};
    }
    void set(Vertex v, std::span<const double> p);

    const std::vector<double>& data() const { return data_; }

    /// Throws DataError naming the first offending pixel (i, j).
    void validate() const;

    bool operator==(const MvImage&) const = default;

private:
    Manifold manifold_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Known/unknown flags per pixel; true = value given.
class Mask {
public:
    /// Throws DataError unless at least one pixel is known.
    Mask(std::size_t rows, std::size_t cols, std::vector<bool> known);
    static Mask all_known(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return known_.size(); }

    bool known(Vertex v) const { return known_[v]; }
    bool known(std::size_t i, std::size_t j) const { return known_[i * cols_ + j]; }
    void set_known(Vertex v) { known_[v] = true; }

    std::size_t unknown_count() const;
    std::vector<Vertex> unknown_vertices() const;

    bool operator==(const Mask&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<bool> known_;
};

/// Periodic grid index helpers.
inline std::size_t wrap_index(std::ptrdiff_t i, std::size_t n) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

/// (sum over `subset` of d(f(u), g(u))^2)^(1/2).
double image_distance(const MvImage& f, const MvImage& g, std::span<const Vertex> subset);

}  // namespace mvg
