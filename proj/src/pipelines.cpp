#include "manireg/pipelines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "manireg/rng.hpp"

namespace manireg {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

Vec spd_point(const Matrix3d& m) {
    Vec x(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) x[3 * i + j] = 0.5 * (m(i, j) + m(j, i));
    return x;
}

Matrix3d random_rotation(std::uint64_t seed, std::uint64_t salt) {
    // uniform quaternion from four gaussians
    auto g1 = rng::gaussian_pair(seed, salt, 11, 0, 1.0);
    auto g2 = rng::gaussian_pair(seed, salt, 12, 0, 1.0);
    Eigen::Quaterniond q(g1.x, g1.y, g2.x, g2.y);
    q.normalize();
    return q.toRotationMatrix();
}

Matrix3d random_tensor(std::uint64_t seed, std::uint64_t salt, double scale_lo, double scale_hi) {
    double base = std::exp(rng::uniform(rng::key(seed, salt, 21), std::log(scale_lo),
                                        std::log(scale_hi)));
    // mild anisotropy so orientations matter without shrinking the
    // attainable inter-tensor distances
    double a1 = rng::uniform(rng::key(seed, salt, 22), 0.55, 0.9);
    double a2 = rng::uniform(rng::key(seed, salt, 23), 0.35, 0.6);
    Matrix3d rot = random_rotation(seed, salt);
    Vector3d ev(base, base * a1, base * a2);
    return rot * ev.asDiagonal() * rot.transpose();
}

std::vector<int> segment_bounds(int n, int segments, std::uint64_t seed) {
    // segment lengths n/segments +- 20%, deterministic
    std::vector<int> cuts; // jump after column cuts[i]
    double step = static_cast<double>(n) / segments;
    for (int s = 1; s < segments; ++s) {
        double jitter = rng::uniform(rng::key(seed, 31, s), -0.2, 0.2) * step;
        int cut = static_cast<int>(std::round(s * step + jitter));
        cut = std::clamp(cut, s, n - (segments - s) - 1);
        cuts.push_back(cut - 1);
    }
    return cuts;
}

} // namespace

double sigma_from_kappa(double kappa, double a0) {
    if (kappa <= 0) throw UserError("kappa must be positive");
    return a0 / kappa;
}

SyntheticImage make_dti_pwconst(int rows, int cols, std::uint64_t seed, int segments) {
    if (rows < 1 || cols < 1) throw UserError("phantom dimensions must be positive");
    SyntheticImage out;
    out.truth = Image(Manifold::spd3(), rows, cols);
    if (rows == 1) {
        if (segments < 1 || segments > cols)
            throw UserError("segment count must be between 1 and the signal length");
        out.jumps = segment_bounds(cols, segments, seed);
        // alternate high/low diffusivity so adjacent segments are far apart
        // in the affine-invariant metric
        std::vector<Vec> tensors;
        for (int s = 0; s < segments; ++s) {
            bool bright = s % 2 == 0;
            double lo = bright ? 2.6e-3 : 9.0e-5;
            double hi = bright ? 4.0e-3 : 1.4e-4;
            tensors.push_back(spd_point(random_tensor(seed, 100 + s, lo, hi)));
        }
        int seg = 0;
        for (int j = 0; j < cols; ++j) {
            out.truth.at(0, j) = tensors[static_cast<std::size_t>(seg)];
            out.labels.push_back(static_cast<std::uint8_t>(seg));
            if (seg < static_cast<int>(out.jumps.size()) && j == out.jumps[seg]) ++seg;
        }
        out.params = {{"segments", static_cast<double>(segments)}};
        return out;
    }
    // two regions: a disk against background
    double ci = 0.5 * (rows - 1), cj = 0.5 * (cols - 1);
    double radius = std::min(rows, cols) / 3.0;
    Vec inside = spd_point(random_tensor(seed, 201, 2.6e-3, 4.0e-3));
    Vec outside = spd_point(random_tensor(seed, 202, 9.0e-5, 1.4e-4));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            bool in = (i - ci) * (i - ci) + (j - cj) * (j - cj) <= radius * radius;
            out.truth.at(i, j) = in ? inside : outside;
            out.labels.push_back(in ? 1 : 0);
        }
    out.params = {{"radius", radius}};
    return out;
}

SyntheticImage make_dti_smooth(int rows, int cols, std::uint64_t seed) {
    if (rows < 1 || cols < 1) throw UserError("phantom dimensions must be positive");
    SyntheticImage out;
    out.truth = Image(Manifold::spd3(), rows, cols);
    double theta0 = rng::uniform(rng::key(seed, 41), 0.0, std::numbers::pi);
    auto tensor = [&](double t, bool jumped) {
        double theta = theta0 + 0.9 * t + (jumped ? std::numbers::pi / 2 : 0.0);
        double scale = (jumped ? 2.4e-3 : 6.0e-4) * (1.0 + 0.35 * std::sin(2.2 * t));
        Matrix3d rot = Eigen::AngleAxisd(theta, Vector3d::UnitZ()).toRotationMatrix();
        Vector3d ev(scale, 0.45 * scale, 0.3 * scale);
        return spd_point(rot * ev.asDiagonal() * rot.transpose());
    };
    if (rows == 1) {
        int jump_at = cols / 2 - 1;
        out.jumps = {jump_at};
        for (int j = 0; j < cols; ++j) {
            bool jumped = j > jump_at;
            out.truth.at(0, j) = tensor(static_cast<double>(j) / cols, jumped);
            out.labels.push_back(jumped ? 1 : 0);
        }
        return out;
    }
    double ci = 0.5 * (rows - 1), cj = 0.5 * (cols - 1);
    double radius = std::min(rows, cols) / 3.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            bool in = (i - ci) * (i - ci) + (j - cj) * (j - cj) <= radius * radius;
            double t = static_cast<double>(i + j) / (rows + cols);
            out.truth.at(i, j) = tensor(t, in);
            out.labels.push_back(in ? 1 : 0);
        }
    out.params = {{"radius", radius}};
    return out;
}

SyntheticImage make_qball_crossing(int rows, int cols, std::uint64_t seed, const OdfGrid& grid,
                                   double kappa) {
    if (rows < 1 || cols < 1) throw UserError("phantom dimensions must be positive");
    SyntheticImage out;
    out.truth = Image(Manifold::sphere(grid.size()), rows, cols);
    double tilt = rng::uniform(rng::key(seed, 51), -0.2, 0.2);
    Vector3d d1(std::cos(tilt), std::sin(tilt), 0);
    Vector3d d2(-std::sin(tilt), std::cos(tilt), 0);
    Vec single1 = synth_single_peak(grid, d1, kappa);
    Vec single2 = synth_single_peak(grid, d2, kappa);
    Vec crossing = synth_two_peak(grid, d1, d2, 1.0, kappa);
    Vec background = synth_single_peak(grid, d1, 0.0); // uniform
    if (rows == 1) {
        int jump_at = cols / 2 - 1;
        out.jumps = {jump_at};
        for (int j = 0; j < cols; ++j) {
            out.truth.at(0, j) = j <= jump_at ? single1 : crossing;
            out.labels.push_back(j <= jump_at ? 1 : 3);
        }
        out.params = {{"kappa_s", kappa}};
        return out;
    }
    int r0 = rows / 3, r1 = 2 * rows / 3;
    int c0 = cols / 3, c1 = 2 * cols / 3;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            bool band1 = i >= r0 && i < r1;
            bool band2 = j >= c0 && j < c1;
            std::uint8_t label = band1 && band2 ? 3 : band1 ? 1 : band2 ? 2 : 0;
            const Vec& v = label == 3 ? crossing
                           : label == 1 ? single1
                           : label == 2 ? single2
                                        : background;
            out.truth.at(i, j) = v;
            out.labels.push_back(label);
        }
    out.params = {{"kappa_s", kappa}};
    return out;
}

Image noisy_tensor_image(const Image& truth, double sigma, std::uint64_t seed, unsigned threads) {
    DwiStack clean = simulate_dwi(truth, default_directions(), 800.0, 1000.0, threads);
    DwiStack noisy = add_rician(clean, sigma, seed, threads);
    return fit_tensors(noisy, threads).tensors;
}

double boundary_f1(const Image& recon, const std::vector<std::uint8_t>& labels, double jump_eps) {
    const int rows = recon.rows, cols = recon.cols;
    if (static_cast<int>(labels.size()) != rows * cols)
        throw UserError("boundary_f1: label grid size mismatch");
    auto truth_boundary = [&](int i, int j) {
        auto lab = [&](int a, int b) { return labels[static_cast<std::size_t>(a) * cols + b]; };
        if (i > 0 && lab(i, j) != lab(i - 1, j)) return true;
        if (i + 1 < rows && lab(i, j) != lab(i + 1, j)) return true;
        if (j > 0 && lab(i, j) != lab(i, j - 1)) return true;
        if (j + 1 < cols && lab(i, j) != lab(i, j + 1)) return true;
        return false;
    };
    auto recon_boundary = [&](int i, int j) {
        const Vec& x = recon.at(i, j);
        if (i > 0 && recon.m.dist(x, recon.at(i - 1, j)) > jump_eps) return true;
        if (i + 1 < rows && recon.m.dist(x, recon.at(i + 1, j)) > jump_eps) return true;
        if (j > 0 && recon.m.dist(x, recon.at(i, j - 1)) > jump_eps) return true;
        if (j + 1 < cols && recon.m.dist(x, recon.at(i, j + 1)) > jump_eps) return true;
        return false;
    };
    double tp = 0, fp = 0, fn = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            bool t = truth_boundary(i, j);
            bool r = recon_boundary(i, j);
            if (t && r) ++tp;
            else if (!t && r) ++fp;
            else if (t && !r) ++fn;
        }
    if (tp == 0) return 0.0;
    double precision = tp / (tp + fp);
    double recall = tp / (tp + fn);
    return 2 * precision * recall / (precision + recall);
}

bool exact_jumps_recovered(const Image& recon, const std::vector<int>& jumps, double jump_eps) {
    if (recon.rows != 1) throw UserError("exact_jumps_recovered: 1-row images only");
    std::vector<int> found;
    for (int j = 0; j + 1 < recon.cols; ++j)
        if (recon.m.dist(recon.at(0, j), recon.at(0, j + 1)) > jump_eps) found.push_back(j);
    return found == jumps;
}

} // namespace manireg
