#include "mvg/inf_laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvg/error.hpp"
#include "parallel.hpp"

namespace mvg {

namespace {

constexpr double kZeroOperatorNorm = 1e-15;

struct Evaluation {
    Vertex v1 = 0;
    Vertex v2 = 0;
    Tangent value;
    double norm = 0.0;
};

Evaluation evaluate(const NonlocalGraph& g, const MvImage& f, Vertex u) {
    if (u >= g.vertex_count() || g.vertex_count() != f.size())
        throw DimensionError("inf_laplacian: graph and image sizes disagree");
    const auto nbrs = g.neighbors(u);
    if (nbrs.empty()) throw GraphError("inf_laplacian: vertex " + std::to_string(u) + " has no neighbors");

    const Manifold& m = f.manifold();
    const Point x = f.point(u);
    const std::size_t n = nbrs.size();

    std::vector<double> root_w(n);
    std::vector<std::vector<double>> scaled(n);  // sqrt(w) log_x f(v)
    std::vector<std::vector<double>> coords(n);  // same, orthonormal frame
    for (std::size_t a = 0; a < n; ++a) {
        Tangent t = m.log(x, f.point(nbrs[a].to));
        root_w[a] = std::sqrt(nbrs[a].weight);
        for (double& c : t.vec) c *= root_w[a];
        coords[a] = m.orthonormal_coords(x, t);
        scaled[a] = std::move(t.vec);
    }

    std::size_t best_a = 0, best_b = 0;
    double best = -1.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double obj = 0.0;
            for (std::size_t c = 0; c < coords[a].size(); ++c) {
                const double d = coords[a][c] - coords[b][c];
                obj += d * d;
            }
            const bool better =
                obj > best ||
                (obj == best && std::pair(nbrs[a].to, nbrs[b].to) < std::pair(nbrs[best_a].to, nbrs[best_b].to));
            if (better) {
                best = obj;
                best_a = a;
                best_b = b;
            }
        }
    }

    Evaluation ev;
    ev.v1 = nbrs[best_a].to;
    ev.v2 = nbrs[best_b].to;
    const double denom = root_w[best_a] + root_w[best_b];
    ev.value = Tangent{x, std::vector<double>(m.tangent_len())};
    for (std::size_t c = 0; c < ev.value.vec.size(); ++c)
        ev.value.vec[c] = (scaled[best_a][c] + scaled[best_b][c]) / denom;
    double sq = 0.0;
    for (std::size_t c = 0; c < coords[best_a].size(); ++c) {
        const double v = (coords[best_a][c] + coords[best_b][c]) / denom;
        sq += v * v;
    }
    ev.norm = std::sqrt(sq);
    if (ev.norm < kZeroOperatorNorm) {
        std::fill(ev.value.vec.begin(), ev.value.vec.end(), 0.0);
        ev.norm = 0.0;
    }
    return ev;
}

template <class Fn>
auto at_vertex(Vertex u, Fn&& fn) {
    const std::string where = "vertex " + std::to_string(u) + ": ";
    try {
        return fn();
    } catch (const CutLocusError& e) {
        throw CutLocusError(where + e.what());
    } catch (const NotSpdError& e) {
        throw NotSpdError(where + e.what());
    } catch (const GraphError& e) {
        throw GraphError(where + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(where + e.what());
    }
}

}  // namespace

std::pair<Vertex, Vertex> select_extremal_pair(const NonlocalGraph& g, const MvImage& f, Vertex u) {
    const Evaluation ev = evaluate(g, f, u);
    return {ev.v1, ev.v2};
}

Tangent inf_laplacian(const NonlocalGraph& g, const MvImage& f, Vertex u) { return evaluate(g, f, u).value; }

TangentField inf_laplacian_field(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> vertices,
                                 std::size_t threads) {
    TangentField out;
    out.values.resize(f.size());
    std::vector<Tangent> vals(vertices.size());
    detail::parallel_for(vertices.size(), threads, [&](std::size_t i) {
        vals[i] = at_vertex(vertices[i], [&] { return inf_laplacian(g, f, vertices[i]); });
    });
    for (std::size_t i = 0; i < vertices.size(); ++i) out.values[vertices[i]] = std::move(vals[i]);
    return out;
}

double real_graph_inf_laplacian(const NonlocalGraph& g, std::span<const double> f, Vertex u) {
    if (f.size() != g.vertex_count()) throw DimensionError("real_graph_inf_laplacian: size mismatch");
    const auto nbrs = g.neighbors(u);
    if (nbrs.empty()) throw GraphError("real_graph_inf_laplacian: vertex " + std::to_string(u) + " has no neighbors");
    double up = 0.0;
    double down = 0.0;
    for (const Edge& e : nbrs) {
        const double diff = std::sqrt(e.weight) * (f[e.to] - f[u]);
        up = std::max(up, std::abs(std::max(diff, 0.0)));
        down = std::max(down, std::abs(std::min(diff, 0.0)));
    }
    return up - down;
}

MvImage euler_step(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> active, double tau,
                   std::size_t threads) {
    MvImage next = f;
    const Manifold& m = f.manifold();
    std::vector<Point> updated(active.size());
    detail::parallel_for(active.size(), threads, [&](std::size_t i) {
        const Vertex u = active[i];
        updated[i] = at_vertex(u, [&] {
            Evaluation ev = evaluate(g, f, u);
            if (ev.norm == 0.0) return f.point(u);
            for (double& c : ev.value.vec) c *= tau;
            return m.exp(ev.value.base, ev.value);
        });
    });
    for (std::size_t i = 0; i < active.size(); ++i) next.set(active[i], updated[i]);
    return next;
}

DirichletResult solve_dirichlet(const NonlocalGraph& g, const MvImage& f0, const Mask& mask,
                                std::span<const Vertex> active, const SolverConfig& cfg) {
    cfg.validate();
    if (mask.rows() != f0.rows() || mask.cols() != f0.cols()) throw DimensionError("solve_dirichlet: mask shape");
    if (g.vertex_count() != f0.size()) throw DimensionError("solve_dirichlet: graph size");
    for (Vertex u : active) {
        if (u >= f0.size()) throw DimensionError("solve_dirichlet: active vertex out of range");
        if (mask.known(u))
            throw DataError("solve_dirichlet: active vertex " + std::to_string(u) + " is a boundary vertex");
    }

    DirichletResult res{f0, 0, {}};
    if (active.empty()) return res;

    const Manifold& m = f0.manifold();
    double first_mean = 1.0;
    for (std::size_t it = 0; it < cfg.max_iter; ++it) {
        MvImage next = euler_step(g, res.image, active, cfg.tau, cfg.threads);
        double sum = 0.0;
        for (Vertex u : active) sum += m.distance(next.at(u), res.image.at(u));
        const double mean = sum / static_cast<double>(active.size());
        if (it == 0 && mean > 0.0) first_mean = mean;
        const double rel = mean / first_mean;
        res.image = std::move(next);
        res.trace.push_back(rel);
        ++res.iterations;
        if (rel < cfg.eps) break;
    }
    return res;
}

double max_residual(const NonlocalGraph& g, const MvImage& f, std::span<const Vertex> vertices) {
    double worst = 0.0;
    for (Vertex u : vertices) worst = std::max(worst, at_vertex(u, [&] { return evaluate(g, f, u).norm; }));
    return worst;
}

}  // namespace mvg
