#include "manireg/dti.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "manireg/parallel.hpp"
#include "manireg/rng.hpp"

namespace manireg {

namespace detail {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace detail

namespace {

using Mat3 = Eigen::Matrix3d;

Mat3 tensor_at(const Image& img, int idx) {
    Mat3 s;
    const Vec& x = img.pts[static_cast<std::size_t>(idx)];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s(i, j) = x[3 * i + j];
    return s;
}

Eigen::Vector3d canonical_hemisphere(Eigen::Vector3d v) {
    if (v.z() < 0 || (v.z() == 0 && (v.y() < 0 || (v.y() == 0 && v.x() < 0)))) v = -v;
    return v;
}

} // namespace

void DwiStack::validate() const {
    if (n_dirs() < 6) throw UserError("dwi stack needs at least 6 directions");
    if (static_cast<int>(images.size()) != n_dirs())
        throw UserError("dwi stack: directions/images count mismatch");
    if (b <= 0 || a0 <= 0) throw UserError("dwi stack: b and A0 must be positive");
    for (const auto& v : directions)
        if (std::abs(v.norm() - 1.0) > 1e-10)
            throw UserError("dwi stack: gradient direction is not unit length");
    for (const auto& im : images) {
        if (im.rows() != rows || im.cols() != cols)
            throw UserError("dwi stack: image shape mismatch");
        if ((im.array() <= 0).any()) throw UserError("dwi stack: non-positive intensity");
    }
}

std::vector<Eigen::Vector3d> default_directions() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts;
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-1.0, 1.0}) {
            verts.emplace_back(0.0, s1, s2 * phi);
            verts.emplace_back(s1, s2 * phi, 0.0);
            verts.emplace_back(s1 * phi, 0.0, s2);
        }
    // Icosahedron edges connect vertices at squared distance 4.
    std::vector<Eigen::Vector3d> dirs;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (std::abs((verts[i] - verts[j]).squaredNorm() - 4.0) > 1e-9) continue;
            Eigen::Vector3d mid = canonical_hemisphere((verts[i] + verts[j]).normalized());
            bool dup = false;
            for (const auto& d : dirs)
                if ((d - mid).norm() < 1e-9) dup = true;
            if (!dup) dirs.push_back(mid);
        }
    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
        if (a.z() != b.z()) return a.z() > b.z();
        if (a.y() != b.y()) return a.y() > b.y();
        return a.x() > b.x();
    });
    return dirs; // 15 of them
}

DwiStack simulate_dwi(const Image& tensors, const std::vector<Eigen::Vector3d>& directions,
                      double b, double a0, unsigned threads) {
    if (tensors.m.kind() != Manifold::Kind::Spd3)
        throw UserError("simulate_dwi: tensors must live on spd3");
    DwiStack st;
    st.directions = directions;
    st.b = b;
    st.a0 = a0;
    st.rows = tensors.rows;
    st.cols = tensors.cols;
    st.images.assign(directions.size(), Eigen::MatrixXd(tensors.rows, tensors.cols));
    const int npix = tensors.size();
    parallel_for(static_cast<std::size_t>(npix), threads, [&](std::size_t idx) {
        Mat3 s = tensor_at(tensors, static_cast<int>(idx));
        int i = static_cast<int>(idx) / tensors.cols;
        int j = static_cast<int>(idx) % tensors.cols;
        for (std::size_t d = 0; d < directions.size(); ++d) {
            double q = directions[d].dot(s * directions[d]);
            st.images[d](i, j) = a0 * std::exp(-b * q);
        }
    });
    return st;
}

DwiStack add_rician(const DwiStack& stack, double sigma, std::uint64_t seed, unsigned threads) {
    stack.validate();
    if (sigma <= 0) throw UserError("add_rician: sigma must be positive");
    DwiStack out = stack;
    const std::size_t npix = static_cast<std::size_t>(stack.rows) * stack.cols;
    for (std::size_t d = 0; d < out.images.size(); ++d) {
        parallel_for(npix, threads, [&](std::size_t idx) {
            int i = static_cast<int>(idx) / stack.cols;
            int j = static_cast<int>(idx) % stack.cols;
            auto g = rng::gaussian_pair(seed, d, idx, 0, sigma);
            double v = stack.images[d](i, j);
            out.images[d](i, j) = std::sqrt((g.x + v) * (g.x + v) + g.y * g.y);
        });
    }
    return out;
}

FitResult fit_tensors(const DwiStack& stack, unsigned threads) {
    stack.validate();
    const int nd = stack.n_dirs();
    Eigen::MatrixXd design(nd, 6);
    for (int d = 0; d < nd; ++d) {
        const auto& v = stack.directions[d];
        design.row(d) << v.x() * v.x(), v.y() * v.y(), v.z() * v.z(), 2 * v.x() * v.y(),
            2 * v.x() * v.z(), 2 * v.y() * v.z();
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < 6) throw UserError("fit_tensors: directions do not span symmetric matrices");

    FitResult res;
    res.tensors = Image(Manifold::spd3(), stack.rows, stack.cols);
    const std::size_t npix = static_cast<std::size_t>(stack.rows) * stack.cols;
    std::vector<char> clamped(npix, 0);
    const double floor_intensity = 1e-6 * stack.a0;
    parallel_for(npix, threads, [&](std::size_t idx) {
        int i = static_cast<int>(idx) / stack.cols;
        int j = static_cast<int>(idx) % stack.cols;
        Eigen::VectorXd y(nd);
        for (int d = 0; d < nd; ++d) {
            double val = std::max(stack.images[d](i, j), floor_intensity);
            y[d] = std::log(stack.a0 / val) / stack.b;
        }
        Eigen::VectorXd s = qr.solve(y);
        Mat3 t;
        t << s[0], s[3], s[4], s[3], s[1], s[5], s[4], s[5], s[2];
        Eigen::SelfAdjointEigenSolver<Mat3> es(t);
        Eigen::Vector3d ev = es.eigenvalues();
        double lo = std::max(1e-6 * std::max(ev.maxCoeff(), 0.0), 1e-12);
        bool cl = false;
        for (int l = 0; l < 3; ++l)
            if (ev[l] < lo) {
                ev[l] = lo;
                cl = true;
            }
        if (cl) clamped[idx] = 1;
        Mat3 proj = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        Vec& x = res.tensors.pts[idx];
        x.resize(9);
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) x[3 * a + c] = 0.5 * (proj(a, c) + proj(c, a));
    });
    res.clamped = std::any_of(clamped.begin(), clamped.end(), [](char c) { return c != 0; });
    return res;
}

void export_glyphs(const Image& tensors, double c, std::ostream& out) {
    if (tensors.m.kind() != Manifold::Kind::Spd3)
        throw UserError("export_glyphs: input must live on spd3");
    if (c <= 0) throw UserError("export_glyphs: c must be positive");
    for (int i = 0; i < tensors.rows; ++i) {
        for (int j = 0; j < tensors.cols; ++j) {
            Mat3 s = tensor_at(tensors, i * tensors.cols + j);
            Eigen::SelfAdjointEigenSolver<Mat3> es(s);
            // decreasing eigenvalue order
            std::string line = std::to_string(i) + " " + std::to_string(j);
            for (int l = 2; l >= 0; --l) line += " " + detail::format_double(es.eigenvalues()[l]);
            for (int l = 2; l >= 0; --l)
                for (int a = 0; a < 3; ++a)
                    line += " " + detail::format_double(es.eigenvectors()(a, l));
            line += " " + detail::format_double(c);
            out << line << "\n";
        }
    }
}

} // namespace manireg
