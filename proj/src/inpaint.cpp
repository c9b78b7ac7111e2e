#include "mvg/inpaint.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <string>

#include "mvg/error.hpp"
#include "mvg/graph.hpp"
#include "mvg/inf_laplacian.hpp"

namespace mvg {

namespace {

// North, east, south, west.
std::array<Vertex, 4> four_neighbors(Vertex v, std::size_t rows, std::size_t cols) {
    const auto i = static_cast<std::ptrdiff_t>(v / cols);
    const auto j = static_cast<std::ptrdiff_t>(v % cols);
    return {wrap_index(i - 1, rows) * cols + static_cast<std::size_t>(j),
            static_cast<std::size_t>(i) * cols + wrap_index(j + 1, cols),
            wrap_index(i + 1, rows) * cols + static_cast<std::size_t>(j),
            static_cast<std::size_t>(i) * cols + wrap_index(j - 1, cols)};
}

}  // namespace

std::vector<Vertex> find_border(const Mask& mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < mask.size(); ++v) {
        if (mask.known(v)) continue;
        for (Vertex n : four_neighbors(v, mask.rows(), mask.cols()))
            if (mask.known(n)) {
                out.push_back(v);
                break;
            }
    }
    return out;
}

MvImage initialize_border(const MvImage& img, const Mask& mask, std::span<const Vertex> border) {
    if (mask.rows() != img.rows() || mask.cols() != img.cols()) throw DimensionError("initialize_border: mask shape");
    MvImage out = img;
    for (Vertex v : border) {
        bool done = false;
        for (Vertex n : four_neighbors(v, img.rows(), img.cols()))
            if (mask.known(n)) {
                out.set(v, img.at(n));
                done = true;
                break;
            }
        if (!done)
            throw DataError("initialize_border: vertex " + std::to_string(v) + " has no known 4-neighbor");
    }
    return out;
}

InpaintResult inpaint(const MvImage& img, const Mask& mask, const SolverConfig& cfg) {
    cfg.validate();
    if (mask.rows() != img.rows() || mask.cols() != img.cols()) throw DimensionError("inpaint: mask shape");

    InpaintResult res{img, FrontState{mask, {}, 0, {}}};
    FrontState& st = res.state;
    std::vector<Vertex> solved;  // earlier layers, used in cumulative mode

    while (st.mask_now.unknown_count() > 0) {
        const auto t0 = std::chrono::steady_clock::now();
        st.active = find_border(st.mask_now);
        if (st.active.empty()) throw GraphError("inpaint: unknown region has no border");

        res.image = initialize_border(res.image, st.mask_now, st.active);

        std::vector<Vertex> targets = st.active;
        const Mask* fixed = &st.mask_now;
        if (cfg.cumulative_active) {
            targets.insert(targets.end(), solved.begin(), solved.end());
            std::sort(targets.begin(), targets.end());
            fixed = &mask;
        }

        LayerRecord rec;
        rec.layer = st.layer_index;
        rec.size = st.active.size();
        rec.active = targets.size();
        try {
            const NonlocalGraph g = build_graph(res.image, st.mask_now, cfg, targets);
            rec.edges = g.edge_count();
            rec.sigma = g.sigma();
            DirichletResult sol = solve_dirichlet(g, res.image, *fixed, targets, cfg);
            res.image = std::move(sol.image);
            rec.iterations = sol.iterations;
            rec.final_change = sol.trace.empty() ? 0.0 : sol.trace.back();
        } catch (const GraphError& e) {
            throw GraphError("layer " + std::to_string(st.layer_index) + ": " + e.what());
        } catch (const CutLocusError& e) {
            throw CutLocusError("layer " + std::to_string(st.layer_index) + ": " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError("layer " + std::to_string(st.layer_index) + ": " + e.what());
        }

        for (Vertex v : st.active) st.mask_now.set_known(v);
        solved.insert(solved.end(), st.active.begin(), st.active.end());
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        st.log.push_back(rec);
        ++st.layer_index;
    }
    return res;
}

}  // namespace mvg
