#pragma once

#include <filesystem>

#include "manireg/dti.hpp"
#include "manireg/signal.hpp"

namespace manireg {

/// Dataset file format ("MANIREG v1"): one ASCII header line
///   MANIREG v1 <manifold> <dims> <rows> <cols>\n
/// followed by rows*cols*coord_count little-endian float64 values, points
/// row-major, coordinates per point as documented on Manifold. Decoding
/// validates every point against its manifold invariants and reports the
/// first offending cell.
void save_dataset(const Image& img, const std::filesystem::path& path);
Image load_dataset(const std::filesystem::path& path);

/// DWI stack directory format: a `directions.txt` sidecar
///   b <b>
///   A0 <a0>
///   <vx> <vy> <vz>     (one unit vector per line)
/// plus one dataset file dwi_000.mrg, dwi_001.mrg, ... per direction
/// (manifold tag `euclidean 1`).
void save_dwi(const DwiStack& stack, const std::filesystem::path& dir);
DwiStack load_dwi(const std::filesystem::path& dir);

namespace detail {
std::string format_double(double v); // shortest round-trip decimal
}

} // namespace manireg
