#include "epm/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace epm {

namespace {
constexpr char kMagic[4] = {'M', 'K', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t rank_tag(Rank r) {
  switch (r) {
    case Rank::scalar: return 0;
    case Rank::radial_vector: return 1;
    case Rank::vector3: return 3;
  }
  return 0;
}
}  // namespace

void write_field(const std::string& path, const GridFunction& u) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_field: cannot open " + path);
  char header[32] = {};
  std::memcpy(header, kMagic, 4);
  std::uint32_t version = kVersion;
  std::uint32_t geom_tag = u.on_radial() ? 0u : 1u;
  std::uint32_t n = u.on_radial() ? std::uint32_t(u.radial().n)
                                  : std::uint32_t(u.box().n);
  double extent = u.on_radial() ? u.radial().r_max : u.box().half_width;
  std::uint32_t rt = rank_tag(u.rank);
  std::memcpy(header + 4, &version, 4);
  std::memcpy(header + 8, &geom_tag, 4);
  std::memcpy(header + 12, &n, 4);
  std::memcpy(header + 16, &extent, 8);
  std::memcpy(header + 24, &rt, 4);
  f.write(header, 32);
  f.write(reinterpret_cast<const char*>(u.samples.data()),
          std::streamsize(u.samples.size() * sizeof(double)));
  if (!f) throw std::runtime_error("write_field: short write to " + path);
}

GridFunction read_field(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_field: cannot open " + path);
  char header[32];
  f.read(header, 32);
  if (!f || std::memcmp(header, kMagic, 4) != 0)
    throw std::runtime_error("read_field: bad magic in " + path);
  std::uint32_t version, geom_tag, n, rt;
  double extent;
  std::memcpy(&version, header + 4, 4);
  std::memcpy(&geom_tag, header + 8, 4);
  std::memcpy(&n, header + 12, 4);
  std::memcpy(&extent, header + 16, 8);
  std::memcpy(&rt, header + 24, 4);
  if (version != kVersion)
    throw std::runtime_error("read_field: unsupported version");
  Rank rank = rt == 0 ? Rank::scalar
                      : (rt == 1 ? Rank::radial_vector : Rank::vector3);
  GridFunction u;
  if (geom_tag == 0)
    u = GridFunction(RadialGrid(extent, int(n)), rank);
  else
    u = GridFunction(BoxGrid(extent, int(n)), rank);
  f.read(reinterpret_cast<char*>(u.samples.data()),
         std::streamsize(u.samples.size() * sizeof(double)));
  if (!f) throw std::runtime_error("read_field: truncated file " + path);
  return u;
}

}  // namespace epm
