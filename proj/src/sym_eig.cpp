#include "mvg/sym_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mvg/error.hpp"

namespace mvg {

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (r != c) s += a[r * n + c] * a[r * n + c];
    return std::sqrt(s);
}

}  // namespace

SymEig sym_eig(std::span<const double> a_in, std::size_t n) {
    if (n == 0 || n > kMaxSymEigDim)
        throw DimensionError("sym_eig: dimension " + std::to_string(n) + " outside [1, 16]");
    if (a_in.size() != n * n)
        throw DimensionError("sym_eig: expected " + std::to_string(n * n) + " entries, got " +
                             std::to_string(a_in.size()));

    double frob = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const double v = a_in[r * n + c];
            if (!std::isfinite(v)) throw DimensionError("sym_eig: non-finite entry");
            frob += v * v;
            if (c > r && std::abs(v - a_in[c * n + r]) > 1e-9)
                throw DimensionError("sym_eig: matrix is not symmetric");
        }
    }
    frob = std::sqrt(frob);

    // Work on the symmetrized copy.
    std::vector<double> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = 0.5 * (a_in[r * n + c] + a_in[c * n + r]);

    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) q[i * n + i] = 1.0;

    const double tol = 1e-14 * std::max(1.0, frob);
    bool converged = false;
    for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm(a, n) < tol) {
            converged = true;
            break;
        }
        if (sweep == kMaxJacobiSweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const double apr = a[p * n + r];
                if (apr == 0.0) continue;
                const double theta = (a[r * n + r] - a[p * n + p]) / (2.0 * apr);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- J^T A J with J the (p, r) Givens rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akr = a[k * n + r];
                    a[k * n + p] = c * akp - s * akr;
                    a[k * n + r] = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double ark = a[r * n + k];
                    a[p * n + k] = c * apk - s * ark;
                    a[r * n + k] = s * apk + c * ark;
                }
                a[p * n + r] = 0.0;
                a[r * n + p] = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const double qkp = q[k * n + p];
                    const double qkr = q[k * n + r];
                    q[k * n + p] = c * qkp - s * qkr;
                    q[k * n + r] = s * qkp + c * qkr;
                }
            }
        }
    }
    if (!converged)
        throw ConvergenceError("sym_eig: no convergence after " + std::to_string(kMaxJacobiSweeps) +
                               " sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

    SymEig out;
    out.n = n;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a[order[j] * n + order[j]];
        for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + j] = q[k * n + order[j]];
    }
    return out;
}

}  // namespace mvg
