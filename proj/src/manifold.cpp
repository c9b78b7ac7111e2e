#include "mvg/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mvg/error.hpp"
#include "mvg/sym_eig.hpp"

namespace mvg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTinyTangent = 1e-15;
constexpr double kCutLocusTol = 1e-10;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// --- small dense helpers for Spd(n), row-major n x n ---------------------

std::vector<double> matmul(std::span<const double> a, std::span<const double> b, std::size_t n) {
    std::vector<double> c(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a[i * n + k];
            for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
        }
    return c;
}

void symmetrize(std::vector<double>& a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
}

// s * a * s for symmetric s, symmetrized.
std::vector<double> congruence(std::span<const double> s, std::span<const double> a, std::size_t n) {
    auto out = matmul(matmul(s, a, n), s, n);
    symmetrize(out, n);
    return out;
}

struct SpdRoots {
    std::vector<double> sqrt;
    std::vector<double> inv_sqrt;
};

SpdRoots spd_roots(std::span<const double> x, std::size_t n) {
    const SymEig e = sym_eig(x, n);
    for (double l : e.values)
        if (!(l > 0.0)) throw NotSpdError("Spd: matrix has non-positive eigenvalue " + std::to_string(l));
    return {sym_apply(e, [](double l) { return std::sqrt(l); }),
            sym_apply(e, [](double l) { return 1.0 / std::sqrt(l); })};
}

// Lower Cholesky factor; throws NotSpdError on a non-positive pivot.
std::vector<double> cholesky(std::span<const double> x, std::size_t n) {
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double d = x[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
        if (!(d > 0.0)) throw NotSpdError("Spd: matrix is not positive definite");
        const double ljj = std::sqrt(d);
        l[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = x[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            l[i * n + j] = s / ljj;
        }
    }
    return l;
}

// L^{-1} A L^{-T} for lower-triangular L and symmetric A.
std::vector<double> whiten(std::span<const double> l, std::span<const double> a, std::size_t n) {
    // B = L^{-1} A by forward substitution on each column.
    std::vector<double> b(n * n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            double s = a[i * n + c];
            for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k * n + c];
            b[i * n + c] = s / l[i * n + i];
        }
    // W = B L^{-T}, i.e. W^T = L^{-1} B^T.
    std::vector<double> w(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            double s = b[r * n + i];
            for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * w[r * n + k];
            w[r * n + i] = s / l[i * n + i];
        }
    symmetrize(w, n);
    return w;
}

double spd_distance(std::span<const double> x, std::span<const double> y, std::size_t n) {
    const auto l = cholesky(x, n);
    const auto m = whiten(l, y, n);
    double s = 0.0;
    if (n == 2) {
        const double mid = 0.5 * (m[0] + m[3]);
        const double rad = std::hypot(0.5 * (m[0] - m[3]), m[1]);
        const double lo = mid - rad;
        const double hi = mid + rad;
        if (!(lo > 0.0)) throw NotSpdError("Spd: matrix is not positive definite");
        s = std::log(lo) * std::log(lo) + std::log(hi) * std::log(hi);
    } else {
        for (double lam : sym_eig(m, n).values) {
            if (!(lam > 0.0)) throw NotSpdError("Spd: matrix is not positive definite");
            s += std::log(lam) * std::log(lam);
        }
    }
    return std::sqrt(s);
}

}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    if (r > kPi) r -= 2.0 * kPi;
    return r;
}

Manifold Manifold::euclidean(std::size_t m) {
    if (m == 0) throw ConfigError("Euclidean dimension must be positive");
    return Manifold(ManifoldKind::euclidean, m, m);
}

Manifold Manifold::circle() { return Manifold(ManifoldKind::circle, 0, 1); }

Manifold Manifold::sphere2() { return Manifold(ManifoldKind::sphere2, 0, 3); }

Manifold Manifold::spd(std::size_t n) {
    if (n == 0 || n > kMaxSymEigDim) throw ConfigError("Spd size must lie in [1, 16]");
    return Manifold(ManifoldKind::spd, n, n * n);
}

std::string Manifold::name() const {
    switch (kind_) {
        case ManifoldKind::euclidean: return "euclidean(" + std::to_string(param_) + ")";
        case ManifoldKind::circle: return "circle";
        case ManifoldKind::sphere2: return "sphere2";
        case ManifoldKind::spd: return "spd(" + std::to_string(param_) + ")";
    }
    return "unknown";
}

void Manifold::check_len(std::span<const double> v, const char* what) const {
    if (v.size() != point_len_)
        throw DimensionError(name() + ": " + what + " has length " + std::to_string(v.size()) +
                             ", expected " + std::to_string(point_len_));
}

void Manifold::check_base(const Point& x, const Tangent& t) const {
    check_len(x, "point");
    check_len(t.vec, "tangent");
    if (t.base != x) throw DimensionError(name() + ": tangent is attached to a different base point");
}

void Manifold::check_point(std::span<const double> x) const {
    check_len(x, "point");
    for (double v : x)
        if (!std::isfinite(v)) throw DataError(name() + ": non-finite coordinate");
    switch (kind_) {
        case ManifoldKind::euclidean: return;
        case ManifoldKind::circle:
            if (!(x[0] > -kPi && x[0] <= kPi)) throw DataError("circle: angle outside (-pi, pi]");
            return;
        case ManifoldKind::sphere2:
            if (std::abs(std::sqrt(dot(x, x)) - 1.0) >= 1e-10)
                throw DataError("sphere2: point is not unit norm");
            return;
        case ManifoldKind::spd: {
            const std::size_t n = param_;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (std::abs(x[i * n + j] - x[j * n + i]) > 1e-12)
                        throw DataError("spd: matrix is not symmetric");
            for (double l : sym_eig(x, n).values)
                if (!(l > 0.0)) throw NotSpdError("spd: matrix has non-positive eigenvalue");
            return;
        }
    }
}

bool Manifold::is_point(std::span<const double> x) const {
    try {
        check_point(x);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

Tangent Manifold::zero_tangent(const Point& x) const {
    check_len(x, "point");
    return {x, std::vector<double>(point_len_, 0.0)};
}

Point Manifold::exp(const Point& x, const Tangent& xi) const {
    check_base(x, xi);
    switch (kind_) {
        case ManifoldKind::euclidean: {
            Point y(x);
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += xi.vec[i];
            return y;
        }
        case ManifoldKind::circle: return {wrap_angle(x[0] + xi.vec[0])};
        case ManifoldKind::sphere2: {
            const double t = std::sqrt(dot(xi.vec, xi.vec));
            if (t < kTinyTangent) return x;
            const double c = std::cos(t);
            const double s = std::sin(t) / t;
            Point y{c * x[0] + s * xi.vec[0], c * x[1] + s * xi.vec[1], c * x[2] + s * xi.vec[2]};
            const double len = std::sqrt(dot(y, y));
            for (double& v : y) v /= len;
            return y;
        }
        case ManifoldKind::spd: {
            const std::size_t n = param_;
            const SpdRoots r = spd_roots(x, n);
            const auto inner = congruence(r.inv_sqrt, xi.vec, n);
            const auto e = sym_apply(sym_eig(inner, n), [](double l) { return std::exp(l); });
            return congruence(r.sqrt, e, n);
        }
    }
    return x;
}

Tangent Manifold::log(const Point& x, const Point& y) const {
    check_len(x, "point");
    check_len(y, "point");
    if (x == y) return zero_tangent(x);
    switch (kind_) {
        case ManifoldKind::euclidean: {
            Tangent t{x, std::vector<double>(point_len_)};
            for (std::size_t i = 0; i < point_len_; ++i) t.vec[i] = y[i] - x[i];
            return t;
        }
        case ManifoldKind::circle: {
            const double d = wrap_angle(y[0] - x[0]);
            if (kPi - std::abs(d) < kCutLocusTol) throw CutLocusError("circle: log of antipodal point");
            return {x, {d}};
        }
        case ManifoldKind::sphere2: {
            const double sum[3] = {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
            if (std::sqrt(dot(sum, sum)) < kCutLocusTol) throw CutLocusError("sphere2: log of antipodal point");
            const double c = dot(x, y);
            std::vector<double> v{y[0] - c * x[0], y[1] - c * x[1], y[2] - c * x[2]};
            const double s = std::sqrt(dot(v, v));
            const double theta = std::atan2(s, c);
            if (theta < kTinyTangent || s == 0.0) return zero_tangent(x);
            for (double& vi : v) vi *= theta / s;
            return {x, std::move(v)};
        }
        case ManifoldKind::spd: {
            const std::size_t n = param_;
            const SpdRoots r = spd_roots(x, n);
            const auto inner = congruence(r.inv_sqrt, y, n);
            const SymEig e = sym_eig(inner, n);
            for (double l : e.values)
                if (!(l > 0.0)) throw NotSpdError("spd: log target is not positive definite");
            const auto lg = sym_apply(e, [](double l) { return std::log(l); });
            return {x, congruence(r.sqrt, lg, n)};
        }
    }
    return zero_tangent(x);
}

double Manifold::distance(std::span<const double> x, std::span<const double> y) const {
    check_len(x, "point");
    check_len(y, "point");
    if (std::equal(x.begin(), x.end(), y.begin())) return 0.0;
    switch (kind_) {
        case ManifoldKind::euclidean: {
            double s = 0.0;
            for (std::size_t i = 0; i < point_len_; ++i) s += (y[i] - x[i]) * (y[i] - x[i]);
            return std::sqrt(s);
        }
        case ManifoldKind::circle: return std::abs(wrap_angle(y[0] - x[0]));
        case ManifoldKind::sphere2: {
            const double cx = x[1] * y[2] - x[2] * y[1];
            const double cy = x[2] * y[0] - x[0] * y[2];
            const double cz = x[0] * y[1] - x[1] * y[0];
            return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot(x, y));
        }
        case ManifoldKind::spd: return spd_distance(x, y, param_);
    }
    return 0.0;
}

std::vector<double> Manifold::orthonormal_coords(const Point& x, const Tangent& a) const {
    check_base(x, a);
    if (kind_ != ManifoldKind::spd) return a.vec;
    const std::size_t n = param_;
    return whiten(cholesky(x, n), a.vec, n);
}

double Manifold::inner(const Point& x, const Tangent& a, const Tangent& b) const {
    check_base(x, a);
    check_base(x, b);
    if (kind_ != ManifoldKind::spd) return dot(a.vec, b.vec);
    const std::size_t n = param_;
    const auto l = cholesky(x, n);
    return dot(whiten(l, a.vec, n), whiten(l, b.vec, n));
}

double Manifold::norm(const Point& x, const Tangent& a) const { return std::sqrt(std::max(0.0, inner(x, a, a))); }

}  // namespace mvg
