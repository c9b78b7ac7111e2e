#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mvg {

/// Eigendecomposition A = Q diag(values) Q^T of a small symmetric matrix.
/// `vectors` is row-major n x n; column j is the eigenvector for values[j].
struct SymEig {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<double> vectors;
};

inline constexpr std::size_t kMaxSymEigDim = 16;
inline constexpr int kMaxJacobiSweeps = 100;

/// Cyclic Jacobi rotations. Eigenvalues are returned in ascending order.
/// Throws DimensionError for bad sizes or asymmetry above 1e-9, and
/// ConvergenceError if the off-diagonal mass does not vanish in
/// kMaxJacobiSweeps sweeps.
SymEig sym_eig(std::span<const double> a, std::size_t n);

/// Q diag(fn(values)) Q^T, symmetrized exactly.
template <class Fn>
std::vector<double> sym_apply(const SymEig& e, Fn fn) {
    const std::size_t n = e.n;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = fn(e.values[i]);
    std::vector<double> out(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += e.vectors[r * n + k] * d[k] * e.vectors[c * n + k];
            out[r * n + c] = s;
            out[c * n + r] = s;
        }
    }
    return out;
}

}  // namespace mvg
