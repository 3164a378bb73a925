#include "manireg/io.hpp"

#include <bit>
#include <fstream>
#include <sstream>

namespace manireg {

static_assert(std::endian::native == std::endian::little,
              "dataset payload is little-endian float64; big-endian hosts are unsupported");

namespace {

Manifold manifold_from_header(const std::string& name, int dims) {
    if (name == "euclidean") return Manifold::euclidean(dims);
    if (name == "sphere") return Manifold::sphere(dims);
    if (name == "spd3") {
        if (dims != 3) throw DecodeError("spd3 datasets must declare dims 3");
        return Manifold::spd3();
    }
    throw DecodeError("unknown manifold tag '" + name + "'");
}

} // namespace

void save_dataset(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UserError("cannot open '" + path.string() + "' for writing");
    out << "MANIREG v1 " << img.m.name() << " " << img.m.header_dim() << " " << img.rows << " "
        << img.cols << "\n";
    for (const auto& p : img.pts)
        out.write(reinterpret_cast<const char*>(p.data()),
                  static_cast<std::streamsize>(sizeof(double)) * p.size());
    if (!out) throw UserError("failed writing '" + path.string() + "'");
}

Image load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UserError("cannot open '" + path.string() + "'");
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, version, name;
    int dims = 0, rows = 0, cols = 0;
    hs >> magic >> version >> name >> dims >> rows >> cols;
    if (magic != "MANIREG") throw DecodeError("'" + path.string() + "' is not a MANIREG dataset");
    if (version != "v1") throw DecodeError("unsupported format version '" + version + "'");
    if (!hs || rows < 1 || cols < 1) throw DecodeError("malformed dataset header");
    Manifold m = manifold_from_header(name, dims);

    Image img(m, rows, cols);
    const std::size_t expected =
        static_cast<std::size_t>(rows) * cols * m.coord_count() * sizeof(double);
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (payload.size() != expected)
        throw DecodeError("payload of '" + path.string() + "': expected " +
                          std::to_string(expected) + " bytes, got " +
                          std::to_string(payload.size()));
    const double* src = reinterpret_cast<const double*>(payload.data());
    for (int cell = 0; cell < img.size(); ++cell) {
        Vec& p = img.pts[static_cast<std::size_t>(cell)];
        p.resize(m.coord_count());
        for (int c = 0; c < m.coord_count(); ++c) p[c] = *src++;
        try {
            m.validate_point(p);
        } catch (const UserError& e) {
            throw DecodeError("cell " + std::to_string(cell) + " of '" + path.string() +
                              "': " + e.what());
        }
    }
    return img;
}

void save_dwi(const DwiStack& stack, const std::filesystem::path& dir) {
    stack.validate();
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "directions.txt");
        if (!out) throw UserError("cannot write '" + (dir / "directions.txt").string() + "'");
        out << "b " << detail::format_double(stack.b) << "\n";
        out << "A0 " << detail::format_double(stack.a0) << "\n";
        for (const auto& v : stack.directions)
            out << detail::format_double(v.x()) << " " << detail::format_double(v.y()) << " "
                << detail::format_double(v.z()) << "\n";
    }
    for (int d = 0; d < stack.n_dirs(); ++d) {
        Image img(Manifold::euclidean(1), stack.rows, stack.cols);
        for (int i = 0; i < stack.rows; ++i)
            for (int j = 0; j < stack.cols; ++j) {
                Vec v(1);
                v[0] = stack.images[static_cast<std::size_t>(d)](i, j);
                img.at(i, j) = v;
            }
        char name[32];
        std::snprintf(name, sizeof(name), "dwi_%03d.mrg", d);
        save_dataset(img, dir / name);
    }
}

DwiStack load_dwi(const std::filesystem::path& dir) {
    const auto sidecar = dir / "directions.txt";
    std::ifstream in(sidecar);
    if (!in) throw UserError("missing sidecar '" + sidecar.string() + "'");
    DwiStack st;
    std::string tag;
    if (!(in >> tag >> st.b) || tag != "b")
        throw DecodeError("directions.txt: expected 'b <value>' on line 1");
    if (!(in >> tag >> st.a0) || tag != "A0")
        throw DecodeError("directions.txt: expected 'A0 <value>' on line 2");
    double x, y, z;
    while (in >> x >> y >> z) st.directions.emplace_back(x, y, z);

    for (int d = 0; d < st.n_dirs(); ++d) {
        char name[32];
        std::snprintf(name, sizeof(name), "dwi_%03d.mrg", d);
        Image img = load_dataset(dir / name);
        if (img.m.kind() != Manifold::Kind::Euclidean || img.m.coord_count() != 1)
            throw DecodeError("'" + (dir / name).string() + "' is not a scalar dataset");
        if (d == 0) {
            st.rows = img.rows;
            st.cols = img.cols;
        }
        Eigen::MatrixXd arr(img.rows, img.cols);
        for (int i = 0; i < img.rows; ++i)
            for (int j = 0; j < img.cols; ++j) arr(i, j) = img.at(i, j)[0];
        st.images.push_back(std::move(arr));
    }
    try {
        st.validate();
    } catch (const UserError& e) {
        throw DecodeError("dwi stack '" + dir.string() + "': " + e.what());
    }
    return st;
}

} // namespace manireg
