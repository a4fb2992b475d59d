#pragma once

#include <string>

#include "epm/grid.hpp"

namespace epm {

// Binary field dump: 32-byte header (magic "MKGF", version u32, geometry tag
// u32: 0 radial / 1 box, n u32, extent f64, rank u32, 4 reserved bytes),
// then row-major little-endian f64 samples.
void write_field(const std::string& path, const GridFunction& u);
GridFunction read_field(const std::string& path);

}  // namespace epm
