#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "latmc/lattice.hpp"

namespace latmc::cli {

// A 2D plane of the lattice: for 3D lattices `axis` is held at `index` and
// the remaining two axes (in order) become rows and columns.
struct Plane {
    std::size_t axis = 0;
    std::size_t index = 0;
};

Plane middle_plane(const LatticeGeometry& geometry, std::size_t axis);

// P2 graymap of the plane: corrupt = 0 (black), honest = 255.
std::string to_pgm(const LatticeGeometry& geometry, const Configuration& config, const Plane& plane,
                   std::uint64_t step);

// '+'/'-' grid of the plane, one row per line.
std::string to_ascii_grid(const LatticeGeometry& geometry, const Configuration& config,
                          const Plane& plane);

// Header "d L1 .. Ld step", then one '+'/'-' per site in row-major order
// (wrapped after every last-axis row).
std::string to_lattice_dump(const LatticeGeometry& geometry, const Configuration& config,
                            std::uint64_t step);

struct LoadedSnapshot {
    LatticeGeometry geometry;
    Configuration config;
    std::optional<std::uint64_t> step;
};

// Accepts a lattice dump, an ASCII grid (read as a periodic 2D lattice), or
// a P2 graymap (0 = corrupt). Throws ParseError.
LoadedSnapshot parse_snapshot(std::string_view text);

} // namespace latmc::cli
