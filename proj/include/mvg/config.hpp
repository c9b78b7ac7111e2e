#pragma once

#include <cstddef>
#include <optional>

namespace mvg {

/// Solver and graph-construction parameters. Defaults follow the
/// directional-data experiment (k = 25, p = 12, r = 32).
struct SolverConfig {
    double tau = 0.1;            ///< explicit Euler step, 0 < tau <= 1
    double eps = 1e-7;           ///< stop when the relative change drops below eps
    std::size_t max_iter = 1000; ///< per layer
    std::size_t k = 25;          ///< neighbors per vertex
    std::size_t p = 12;          ///< patch radius, patches are (2p+1)^2
    std::size_t r = 32;          ///< search window radius
    std::optional<double> sigma; ///< weight scale; empty = mean selected patch distance
    bool cumulative_active = false;
    std::size_t threads = 1;

    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

}  // namespace mvg
