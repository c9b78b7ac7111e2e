#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mvg/config.hpp"
#include "mvg/image.hpp"

namespace mvg {

struct Edge {
    Vertex to;
    double weight;
};

/// Directed weighted graph stored as per-vertex adjacency lists. Absent
/// pairs have weight zero; stored weights are strictly positive.
class NonlocalGraph {
public:
    explicit NonlocalGraph(std::size_t vertex_count) : adjacency_(vertex_count) {}

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::span<const Edge> neighbors(Vertex u) const { return adjacency_.at(u); }
    std::size_t edge_count() const;

    /// Throws GraphError on self-loops, out-of-range ids or weight <= 0.
    void add_edge(Vertex u, Vertex v, double weight);

    /// Weight of (u, v), zero when v is not a neighbor of u.
    double weight(Vertex u, Vertex v) const;

    /// Weight scale used during construction (0 for hand-built graphs).
    double sigma() const { return sigma_; }
    void set_sigma(double s) { sigma_ = s; }

private:
    std::vector<std::vector<Edge>> adjacency_;
    double sigma_ = 0.0;
};

/// (2p+1)^2 window around a center, periodic, row-major.
struct Patch {
    std::size_t center_i = 0;
    std::size_t center_j = 0;
    std::size_t radius = 0;
    std::vector<Point> values;
    std::vector<bool> known;
};

Patch extract_patch(const MvImage& img, const Mask& mask, std::size_t i, std::size_t j, std::size_t p);

/// (1/|I|) * sqrt(sum over I of d^2), I = positions known in both patches.
/// Returns +infinity when I is empty.
double patch_distance(const Patch& a, const Patch& b, const Manifold& m);

/// Same quantity computed in place on the image, without materializing
/// patches.
double patch_distance(const MvImage& img, const Mask& mask, Vertex a, Vertex b, std::size_t p);

/// Nonlocal k-nearest-patch graph. Each target gets directed edges to the k
/// known-center pixels (within the periodic search window) of smallest
/// finite patch distance, ties by ascending id, with weight
/// exp(-d^2 / sigma^2). Non-targets get no edges.
///
/// Throws GraphError naming the vertex when a target has no finite candidate.
NonlocalGraph build_graph(const MvImage& img, const Mask& mask, const SolverConfig& cfg,
                          std::span<const Vertex> targets);

}  // namespace mvg
