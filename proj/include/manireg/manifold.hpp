#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "manireg/errors.hpp"

namespace manireg {

using Vec = Eigen::VectorXd;

/// A manifold backend. Points and tangent vectors are flat coordinate
/// vectors:
///   Euclidean(dim)   -- dim coordinates
///   Sphere(ambient)  -- ambient coordinates, unit Euclidean norm
///   Spd3             -- 9 coordinates, symmetric 3x3 matrix row-major,
///                       all eigenvalues positive
/// Tangent vectors use the same flat layout (Sphere: ambient vector
/// orthogonal to the base point; Spd3: symmetric matrix).
///
/// All operations are pure functions of their arguments and safe to call
/// concurrently.
class Manifold {
  public:
    enum class Kind { Euclidean, Sphere, Spd3 };

    static Manifold euclidean(int dim);
    static Manifold sphere(int ambient_dim); // ambient_dim >= 2
    static Manifold spd3();

    Kind kind() const { return kind_; }
    /// Flat coordinates per point (and per tangent vector).
    int coord_count() const { return coords_; }
    /// Dimension field used in dataset headers (Euclidean dim, Sphere
    /// ambient dim, 3 for Spd3).
    int header_dim() const { return dim_; }
    const char* name() const; // "euclidean" | "sphere" | "spd3"

    bool operator==(const Manifold&) const = default;

    /// Riemannian distance. Spd3 uses the affine-invariant metric
    /// d(D,E) = ||log(D^{-1/2} E D^{-1/2})||_F, Sphere the arc length
    /// arccos<x,y> with the inner product clamped to [-1,1].
    double dist(const Vec& x, const Vec& y) const;

    /// Exponential map at `base` applied to tangent coordinates `w`.
    Vec exp(const Vec& base, const Vec& w) const;

    /// Inverse exponential map; returns tangent coordinates at `base`.
    /// Throws AntipodalError on the sphere when target is (almost) -base.
    Vec log(const Vec& base, const Vec& target) const;

    /// Point reached after arc length t on the unit-speed geodesic from x
    /// towards y; requires 0 <= t <= dist(x,y).
    Vec geopoint(const Vec& x, const Vec& y, double t) const;

    /// Riemannian inner product of tangent vectors u, v at `base`.
    double inner(const Vec& base, const Vec& u, const Vec& v) const;

    /// Riemannian norm of tangent vector w at `base`.
    double norm(const Vec& base, const Vec& w) const;

    /// Throws UserError (with the reason) if x is not a valid point.
    void validate_point(const Vec& x) const;

  private:
    Manifold(Kind k, int coords, int dim) : kind_(k), coords_(coords), dim_(dim) {}
    void check_size(const Vec& x) const;

    Kind kind_;
    int coords_;
    int dim_;
};

/// Spd3 eigenvalues of inputs to log-like operations are clamped below at
/// 1e-12 so that numerically singular measured tensors do not abort a run.
/// Each clamping event increments a thread-local counter.
std::uint64_t spd_clamp_count();
void spd_clamp_reset();

} // namespace manireg
