#include "mvg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mvg/error.hpp"
#include "parallel.hpp"

namespace mvg {

namespace {

constexpr double kInfinite = std::numeric_limits<double>::infinity();

// Distinct periodic indices within radius r of c on an axis of length n.
std::vector<std::size_t> window_axis(std::size_t c, std::size_t r, std::size_t n) {
    std::vector<std::size_t> out;
    if (2 * r + 1 >= n) {
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = i;
        return out;
    }
    const auto ci = static_cast<std::ptrdiff_t>(c);
    const auto ri = static_cast<std::ptrdiff_t>(r);
    for (std::ptrdiff_t d = -ri; d <= ri; ++d) out.push_back(wrap_index(ci + d, n));
    return out;
}

std::string pixel_label(Vertex v, std::size_t cols) {
    return "vertex " + std::to_string(v) + " (" + std::to_string(v / cols) + "," + std::to_string(v % cols) + ")";
}

}  // namespace

void SolverConfig::validate() const {
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (max_iter == 0) throw ConfigError("max_iter must be positive");
    if (k == 0) throw ConfigError("k must be at least 1");
    if (r == 0) throw ConfigError("search radius r must be at least 1");
    if (sigma && !(*sigma > 0.0 && std::isfinite(*sigma))) throw ConfigError("sigma must be positive");
}

std::size_t NonlocalGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adjacency_) n += a.size();
    return n;
}

void NonlocalGraph::add_edge(Vertex u, Vertex v, double weight) {
    if (u >= vertex_count() || v >= vertex_count()) throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (!(weight > 0.0) || !std::isfinite(weight)) throw GraphError("edge weight must be positive and finite");
    adjacency_[u].push_back({v, weight});
}

double NonlocalGraph::weight(Vertex u, Vertex v) const {
    for (const Edge& e : neighbors(u))
        if (e.to == v) return e.weight;
    return 0.0;
}

Patch extract_patch(const MvImage& img, const Mask& mask, std::size_t i, std::size_t j, std::size_t p) {
    if (i >= img.rows() || j >= img.cols()) throw DimensionError("extract_patch: center out of range");
    if (mask.rows() != img.rows() || mask.cols() != img.cols()) throw DimensionError("extract_patch: mask shape");
    Patch out;
    out.center_i = i;
    out.center_j = j;
    out.radius = p;
    const auto pr = static_cast<std::ptrdiff_t>(p);
    for (std::ptrdiff_t di = -pr; di <= pr; ++di) {
        const std::size_t y = wrap_index(static_cast<std::ptrdiff_t>(i) + di, img.rows());
        for (std::ptrdiff_t dj = -pr; dj <= pr; ++dj) {
            const std::size_t x = wrap_index(static_cast<std::ptrdiff_t>(j) + dj, img.cols());
            out.values.push_back(img.point(y * img.cols() + x));
            out.known.push_back(mask.known(y, x));
        }
    }
    return out;
}

double patch_distance(const Patch& a, const Patch& b, const Manifold& m) {
    if (a.radius != b.radius || a.values.size() != b.values.size())
        throw DimensionError("patch_distance: radius mismatch");
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t q = 0; q < a.values.size(); ++q) {
        if (!a.known[q] || !b.known[q]) continue;
        const double d = m.distance(a.values[q], b.values[q]);
        sum += d * d;
        ++count;
    }
    if (count == 0) return kInfinite;
    return std::sqrt(sum) / static_cast<double>(count);
}

double patch_distance(const MvImage& img, const Mask& mask, Vertex a, Vertex b, std::size_t p) {
    const std::size_t rows = img.rows();
    const std::size_t cols = img.cols();
    const auto ai = static_cast<std::ptrdiff_t>(a / cols), aj = static_cast<std::ptrdiff_t>(a % cols);
    const auto bi = static_cast<std::ptrdiff_t>(b / cols), bj = static_cast<std::ptrdiff_t>(b % cols);
    const auto pr = static_cast<std::ptrdiff_t>(p);
    const Manifold& m = img.manifold();
    double sum = 0.0;
    std::size_t count = 0;
    for (std::ptrdiff_t di = -pr; di <= pr; ++di) {
        const std::size_t ya = wrap_index(ai + di, rows) * cols;
        const std::size_t yb = wrap_index(bi + di, rows) * cols;
        for (std::ptrdiff_t dj = -pr; dj <= pr; ++dj) {
            const Vertex va = ya + wrap_index(aj + dj, cols);
            const Vertex vb = yb + wrap_index(bj + dj, cols);
            if (!mask.known(va) || !mask.known(vb)) continue;
            const double d = m.distance(img.at(va), img.at(vb));
            sum += d * d;
            ++count;
        }
    }
    if (count == 0) return kInfinite;
    return std::sqrt(sum) / static_cast<double>(count);
}

NonlocalGraph build_graph(const MvImage& img, const Mask& mask, const SolverConfig& cfg,
                          std::span<const Vertex> targets) {
    cfg.validate();
    if (mask.rows() != img.rows() || mask.cols() != img.cols()) throw DimensionError("build_graph: mask shape");
    const std::size_t cols = img.cols();

    using Candidate = std::pair<double, Vertex>;
    std::vector<std::vector<Candidate>> selected(targets.size());

    detail::parallel_for(targets.size(), cfg.threads, [&](std::size_t t) {
        const Vertex u = targets[t];
        if (u >= img.size()) throw GraphError("build_graph: target out of range");
        const auto rows_win = window_axis(u / cols, cfg.r, img.rows());
        const auto cols_win = window_axis(u % cols, cfg.r, cols);
        std::vector<Candidate> cand;
        cand.reserve(rows_win.size() * cols_win.size());
        for (std::size_t y : rows_win)
            for (std::size_t x : cols_win) {
                const Vertex v = y * cols + x;
                if (v == u || !mask.known(v)) continue;
                const double d = patch_distance(img, mask, u, v, cfg.p);
                if (std::isfinite(d)) cand.emplace_back(d, v);
            }
        if (cand.empty())
            throw GraphError("build_graph: no candidate with finite patch distance for " + pixel_label(u, cols));
        const std::size_t keep = std::min(cfg.k, cand.size());
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(keep), cand.end());
        cand.resize(keep);
        selected[t] = std::move(cand);
    });

    double sigma = 1.0;
    if (cfg.sigma) {
        sigma = *cfg.sigma;
    } else {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& c : selected)
            for (const auto& [d, v] : c) {
                sum += d;
                ++n;
            }
        if (n > 0 && sum > 0.0) sigma = sum / static_cast<double>(n);
    }

    NonlocalGraph g(img.size());
    g.set_sigma(sigma);
    for (std::size_t t = 0; t < targets.size(); ++t)
        for (const auto& [d, v] : selected[t]) {
            // Clamp so that far-but-selected neighbors keep a positive weight.
            const double w = std::max(std::exp(-(d * d) / (sigma * sigma)), std::numeric_limits<double>::min());
            g.add_edge(targets[t], v, w);
        }
    return g;
}

}  // namespace mvg
