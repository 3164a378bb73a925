#include "manireg/qball.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>

#include "manireg/rng.hpp"

namespace manireg {

namespace detail {
std::string format_double(double v); // dti.cpp
}

namespace {

using Eigen::Vector3d;

Vector3d canonical(Vector3d v) {
    if (v.z() < 0 || (v.z() == 0 && (v.y() < 0 || (v.y() == 0 && v.x() < 0)))) v = -v;
    return v;
}

struct IcoMesh {
    std::vector<Vector3d> verts;
    std::vector<std::array<int, 3>> faces;
};

IcoMesh icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    IcoMesh m;
    auto add = [&](double x, double y, double z) {
        m.verts.push_back(Vector3d(x, y, z).normalized());
    };
    add(-1, phi, 0); add(1, phi, 0); add(-1, -phi, 0); add(1, -phi, 0);
    add(0, -1, phi); add(0, 1, phi); add(0, -1, -phi); add(0, 1, -phi);
    add(phi, 0, -1); add(phi, 0, 1); add(-phi, 0, -1); add(-phi, 0, 1);
    m.faces = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
               {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
               {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
               {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    return m;
}

IcoMesh subdivide(const IcoMesh& in) {
    IcoMesh out;
    out.verts = in.verts;
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vector3d v = (out.verts[a] + out.verts[b]).normalized();
        out.verts.push_back(v);
        int idx = static_cast<int>(out.verts.size()) - 1;
        midpoint.emplace(key, idx);
        return idx;
    };
    for (const auto& f : in.faces) {
        int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
        out.faces.push_back({f[0], ab, ca});
        out.faces.push_back({f[1], bc, ab});
        out.faces.push_back({f[2], ca, bc});
        out.faces.push_back({ab, bc, ca});
    }
    return out;
}

} // namespace

OdfGrid OdfGrid::standard(int n) {
    if (n < 1) throw UserError("OdfGrid: sample count must be positive");
    IcoMesh mesh = icosahedron();
    for (int level = 0; level < 8; ++level) {
        // one representative per antipodal vertex pair
        std::vector<Vector3d> reps;
        for (const auto& v : mesh.verts) {
            Vector3d c = canonical(v);
            bool dup = false;
            for (const auto& r : reps)
                if ((r - c).norm() < 1e-9) {
                    dup = true;
                    break;
                }
            if (!dup) reps.push_back(c);
        }
        if (static_cast<int>(reps.size()) >= n) {
            std::sort(reps.begin(), reps.end(), [](const Vector3d& a, const Vector3d& b) {
                if (a.z() != b.z()) return a.z() > b.z();
                if (a.y() != b.y()) return a.y() > b.y();
                return a.x() > b.x();
            });
            reps.resize(static_cast<std::size_t>(n));
            return OdfGrid{std::move(reps)};
        }
        mesh = subdivide(mesh);
    }
    throw Error("OdfGrid: sample count out of reach");
}

Vec odf_from_diffusivity(const OdfGrid& grid, const Eigen::VectorXd& raw) {
    if (raw.size() != grid.size())
        throw UserError("odf_from_diffusivity: raw length does not match the grid");
    if ((raw.array() < 0).any()) throw UserError("odf_from_diffusivity: negative raw value");
    double total = raw.sum();
    if (total <= 0) throw UserError("odf_from_diffusivity: raw values are all zero");
    return (raw.array() / total).sqrt().matrix();
}

bool odf_strictly_positive(const Vec& odf) { return (odf.array() > 0).all(); }

Vec synth_single_peak(const OdfGrid& grid, const Eigen::Vector3d& dir, double kappa) {
    return synth_two_peak(grid, dir, dir, 0.0, kappa);
}

Vec synth_two_peak(const OdfGrid& grid, const Eigen::Vector3d& dir1,
                   const Eigen::Vector3d& dir2, double ratio, double kappa) {
    if (std::abs(dir1.norm() - 1.0) > 1e-10 || std::abs(dir2.norm() - 1.0) > 1e-10)
        throw UserError("synth peaks: directions must be unit vectors");
    if (ratio < 0) throw UserError("synth peaks: ratio must be nonnegative");
    Eigen::VectorXd raw(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const auto& s = grid.samples[static_cast<std::size_t>(i)];
        double c1 = s.dot(dir1);
        double c2 = s.dot(dir2);
        raw[i] = std::exp(kappa * c1 * c1) + ratio * std::exp(kappa * c2 * c2);
    }
    return odf_from_diffusivity(grid, raw);
}

Vec odf_noise(const Vec& odf, double sigma, std::uint64_t seed, std::uint64_t salt) {
    if (sigma <= 0) throw UserError("odf_noise: sigma must be positive");
    Eigen::VectorXd raw = odf.array().square();
    for (Eigen::Index i = 0; i < raw.size(); i += 2) {
        auto g = rng::gaussian_pair(seed, salt, static_cast<std::uint64_t>(i) / 2, 1, sigma);
        raw[i] += g.x;
        if (i + 1 < raw.size()) raw[i + 1] += g.y;
    }
    raw = raw.array().max(1e-8);
    raw /= raw.sum();
    return raw.array().sqrt().matrix();
}

void export_odf_glyphs(const Image& odfs, const OdfGrid& grid, std::ostream& out) {
    if (odfs.m.kind() != Manifold::Kind::Sphere || odfs.m.coord_count() != grid.size())
        throw UserError("export_odf_glyphs: image is not ODF-valued over this grid");
    out << "ODFGLYPH v1 " << grid.size() << "\n";
    for (const auto& s : grid.samples)
        out << detail::format_double(s.x()) << " " << detail::format_double(s.y()) << " "
            << detail::format_double(s.z()) << "\n";
    for (int i = 0; i < odfs.rows; ++i) {
        for (int j = 0; j < odfs.cols; ++j) {
            const Vec& phi = odfs.at(i, j);
            std::string line = std::to_string(i) + " " + std::to_string(j) + " 0";
            for (Eigen::Index t = 0; t < phi.size(); ++t)
                line += " " + detail::format_double(phi[t]);
            out << line << "\n";
        }
    }
}

} // namespace manireg
