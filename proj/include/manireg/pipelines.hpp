#pragma once

#include "manireg/dti.hpp"
#include "manireg/qball.hpp"

namespace manireg {

/// Synthetic ground truth plus the information needed to score a
/// reconstruction against it.
struct SyntheticImage {
    Image truth;
    /// 1-row phantoms: jump after column j (0-based, between j and j+1).
    std::vector<int> jumps;
    /// Per-pixel region label, row-major.
    std::vector<std::uint8_t> labels;
    /// Knobs recorded for the manifest, as name/value pairs.
    std::vector<std::pair<std::string, double>> params;
};

/// Piecewise-constant Spd3 phantom. 1-row images use `segments` randomly
/// sized segments with strongly contrasted tensors (alternating diffusivity
/// scale, random orientation); taller images use a two-region disk layout.
SyntheticImage make_dti_pwconst(int rows, int cols, std::uint64_t seed, int segments = 4);

/// Piecewise-smooth Spd3 phantom: tensors vary smoothly except across one
/// jump (1-row: mid-column; 2D: a disk boundary).
SyntheticImage make_dti_smooth(int rows, int cols, std::uint64_t seed);

/// Crossing-fiber ODF phantom on the given grid. 1-row images hold a
/// single-peak and a two-peak segment; taller images two crossing bands
/// (labels: 0 background, 1/2 the bands, 3 the crossing).
SyntheticImage make_qball_crossing(int rows, int cols, std::uint64_t seed, const OdfGrid& grid,
                                   double kappa = 10.0);

/// Noise-level convention for paper-style labels: sigma = A0 / kappa.
double sigma_from_kappa(double kappa, double a0);

/// simulate -> Rician noise -> least-squares fit, with the default gradient
/// scheme; the standard way a noisy tensor image is produced here.
Image noisy_tensor_image(const Image& truth, double sigma, std::uint64_t seed,
                         unsigned threads = 0);

/// F1 score of reconstructed segment-boundary pixels against ground-truth
/// labels. A pixel is a boundary pixel when any 4-neighbor differs (labels)
/// or lies farther than `jump_eps` away (reconstruction).
double boundary_f1(const Image& recon, const std::vector<std::uint8_t>& labels,
                   double jump_eps = 1e-8);

/// Exact jump-set recovery for 1-row reconstructions: the set of columns j
/// with d(x_j, x_{j+1}) > jump_eps must equal `jumps`.
bool exact_jumps_recovered(const Image& recon, const std::vector<int>& jumps,
                           double jump_eps = 1e-8);

} // namespace manireg
