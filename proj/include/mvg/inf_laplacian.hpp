#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mvg/config.hpp"
#include "mvg/graph.hpp"
#include "mvg/image.hpp"

namespace mvg {

/// Per-vertex tangent values; engaged exactly on the vertices it was
/// evaluated on, each attached to the current vertex value.
struct TangentField {
    std::vector<std::optional<Tangent>> values;
};

/// Ordered neighbor pair (v1, v2) maximizing
/// || sqrt(w(u,v1)) log_{f(u)} f(v1) - sqrt(w(u,v2)) log_{f(u)} f(v2) ||_{f(u)}
/// over all ordered pairs, diagonal included. Ties go to the
/// lexicographically smallest (v1, v2).
std::pair<Vertex, Vertex> select_extremal_pair(const NonlocalGraph& g, const MvImage& f, Vertex u);

/// Weighted combination of the two extremal log vectors:
/// (sqrt(w1) log f(v1) + sqrt(w2) log f(v2)) / (sqrt(w1) + sqrt(w2)).
/// Values with norm below 1e-15 are returned as the exact zero tangent.
Tangent inf_laplacian(const NonlocalGraph& g, const MvImage& f, Vertex u);

TangentField inf_laplacian_field(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> vertices,
                                 std::size_t threads = 1);

/// max_v |max(sqrt(w)(f(v)-f(u)), 0)| - max_v |min(sqrt(w)(f(v)-f(u)), 0)|
/// for real-valued f. Reference operator for cross-checks.
double real_graph_inf_laplacian(const NonlocalGraph& g, std::span<const double> f, Vertex u);

/// One explicit Euler step f+(u) = exp_{f(u)}(tau * Laplacian f(u)) on the
/// active vertices; every evaluation reads the input iterate.
MvImage euler_step(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> active, double tau,
                   std::size_t threads = 1);

struct DirichletResult {
    MvImage image;
    std::size_t iterations = 0;
    /// Relative change per iteration: mean displacement over the active
    /// set divided by the first iteration's mean displacement.
    std::vector<double> trace;
};

/// Iterates euler_step on `active` with the mask-known vertices held fixed
/// until the relative change falls below cfg.eps or cfg.max_iter steps.
DirichletResult solve_dirichlet(const NonlocalGraph& g, const MvImage& f0, const Mask& mask,
                                std::span<const Vertex> active, const SolverConfig& cfg);

/// Largest operator norm ||Laplacian f(u)||_{f(u)} over `vertices`.
double max_residual(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> vertices);

}  // namespace mvg
