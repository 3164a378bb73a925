#pragma once

#include <cstdint>
#include <iosfwd>

#include "manireg/signal.hpp"

namespace manireg {

/// A stack of diffusion-weighted images, one per gradient direction.
struct DwiStack {
    std::vector<Eigen::Vector3d> directions; // unit vectors
    double b = 800.0;
    double a0 = 1000.0;
    int rows = 0, cols = 0;
    std::vector<Eigen::MatrixXd> images; // one rows x cols array per direction, > 0

    int n_dirs() const { return static_cast<int>(directions.size()); }
    void validate() const;
};

/// 15 unit gradient directions: edge midpoints of the icosahedron, one
/// representative per antipodal pair. The induced tensor design matrix has
/// full rank 6.
std::vector<Eigen::Vector3d> default_directions();

/// Stejskal-Tanner forward model D_v = A0 exp(-b v^T S v) per pixel and
/// direction.
DwiStack simulate_dwi(const Image& tensors, const std::vector<Eigen::Vector3d>& directions,
                      double b = 800.0, double a0 = 1000.0, unsigned threads = 0);

/// Rician noise: D' = sqrt((X + D)^2 + Y^2) with X, Y ~ N(0, sigma^2) drawn
/// from a counter-based generator, so output is bitwise reproducible for any
/// thread count.
DwiStack add_rician(const DwiStack& stack, double sigma, std::uint64_t seed,
                    unsigned threads = 0);

struct FitResult {
    Image tensors;
    /// True when some pixel needed eigenvalue clamping to reach Spd3.
    bool clamped = false;
};

/// Log-linear least-squares tensor fit: per pixel solve
///   min_S sum_v (v^T S v - log(A0/D'_v)/b)^2
/// over symmetric S (intensities floored at 1e-6*A0 before the log), then
/// clamp eigenvalues at max(1e-6 * lambda_max, 1e-12).
FitResult fit_tensors(const DwiStack& stack, unsigned threads = 0);

/// One record per pixel:
///   i j lambda1 lambda2 lambda3 e1x e1y e1z e2x e2y e2z e3x e3y e3z c
/// with eigenvalues in decreasing order; the ellipsoid semi-axis along e_l
/// is sqrt(c / lambda_l). Floats in shortest round-trip decimal.
void export_glyphs(const Image& tensors, double c, std::ostream& out);

} // namespace manireg
