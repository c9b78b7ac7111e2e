#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mvg {

enum class ManifoldKind { euclidean, circle, sphere2, spd };

/// Coordinates of a manifold point, laid out per ManifoldKind:
/// Euclidean(m): m coordinates; Circle: one angle in (-pi, pi];
/// Sphere2: unit vector in R^3; Spd(n): row-major n x n matrix.
using Point = std::vector<double>;

/// A tangent vector together with the point it is attached to.
struct Tangent {
    Point base;
    std::vector<double> vec;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// Descriptor plus the Riemannian primitives of one of the supported
/// manifolds. Spd uses the affine-invariant metric.
///
/// All members are const and reentrant.
class Manifold {
public:
    static Manifold euclidean(std::size_t m);
    static Manifold circle();
    static Manifold sphere2();
    static Manifold spd(std::size_t n);

    ManifoldKind kind() const { return kind_; }
    /// m for Euclidean(m), n for Spd(n), 0 otherwise.
    std::size_t param() const { return param_; }
    std::size_t point_len() const { return point_len_; }
    std::size_t tangent_len() const { return point_len_; }
    std::string name() const;

    bool operator==(const Manifold&) const = default;

    /// Throws DataError (NotSpdError for Spd eigenvalues) when `x` violates
    /// the point invariants.
    void check_point(std::span<const double> x) const;
    bool is_point(std::span<const double> x) const;

    Point exp(const Point& x, const Tangent& xi) const;
    /// Throws CutLocusError when `y` is (within 1e-10 of) the cut locus of `x`.
    Tangent log(const Point& x, const Point& y) const;
    double distance(std::span<const double> x, std::span<const double> y) const;
    double inner(const Point& x, const Tangent& a, const Tangent& b) const;
    double norm(const Point& x, const Tangent& a) const;

    Tangent zero_tangent(const Point& x) const;

    /// Coordinates of `a` in an orthonormal frame of T_x, so that
    /// inner(x, a, b) equals the Euclidean dot product of the results.
    std::vector<double> orthonormal_coords(const Point& x, const Tangent& a) const;

private:
    Manifold(ManifoldKind kind, std::size_t param, std::size_t point_len)
        : kind_(kind), param_(param), point_len_(point_len) {}

    void check_len(std::span<const double> v, const char* what) const;
    void check_base(const Point& x, const Tangent& t) const;

    ManifoldKind kind_;
    std::size_t param_;
    std::size_t point_len_;
};

}  // namespace mvg
