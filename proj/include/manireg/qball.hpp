#pragma once

#include <cstdint>
#include <iosfwd>

#include "manireg/signal.hpp"

namespace manireg {

/// Spherical sample set for discrete ODFs. A discrete ODF over the grid is
/// a vector of positive values with sum of squares 1, i.e. a point on
/// S^{n-1}; use Manifold::sphere(grid.size()).
struct OdfGrid {
    std::vector<Eigen::Vector3d> samples; // unit vectors, hemisphere representatives

    /// Deterministic hemisphere sampling: subdivide an icosahedral sphere
    /// mesh until at least n antipodal classes exist, canonicalize to the
    /// upper hemisphere, sort by descending (z, y, x) and keep the first n.
    static OdfGrid standard(int n = 181);
    int size() const { return static_cast<int>(samples.size()); }
};

/// Square-root parameterization: phi(s) = sqrt(raw(s) / sum(raw)), so that
/// sum phi^2 = 1. Order-preserving and scale-invariant.
Vec odf_from_diffusivity(const OdfGrid& grid, const Eigen::VectorXd& raw);

/// True when every component is strictly positive (ODFs produced by
/// regularization may brush the quadrant boundary; callers flag rather than
/// project).
bool odf_strictly_positive(const Vec& odf);

/// Single fiber population: raw(s) = exp(kappa * (s . dir)^2).
Vec synth_single_peak(const OdfGrid& grid, const Eigen::Vector3d& dir, double kappa);

/// Two crossing fiber populations with relative weight `ratio` on the
/// second: raw(s) = exp(kappa (s.dir1)^2) + ratio * exp(kappa (s.dir2)^2).
Vec synth_two_peak(const OdfGrid& grid, const Eigen::Vector3d& dir1,
                   const Eigen::Vector3d& dir2, double ratio, double kappa);

/// Additive Gaussian noise on raw = phi^2, clamped below at 1e-8 and
/// renormalized. `salt` separates streams (e.g. pixel index).
Vec odf_noise(const Vec& odf, double sigma, std::uint64_t seed, std::uint64_t salt = 0);

/// One-time header (`ODFGLYPH v1 <n>` plus the n sample directions), then
/// one record per pixel: `i j k r_1 ... r_n` with k the slice index (always
/// 0 for 2D images) and r_m = phi(s_m) the polar-plot radius.
void export_odf_glyphs(const Image& odfs, const OdfGrid& grid, std::ostream& out);

} // namespace manireg
