#include "kirchhoff/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace kirchhoff {

Field make_field(const Grid& grid) {
  Field u;
  u.grid = grid;
  u.samples.assign(grid.size(), 0.0);
  return u;
}

bool all_finite(const Field& u) {
  for (double v : u.samples)
    if (!std::isfinite(v)) return false;
  return true;
}

double quadrature(const Grid& grid, const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double inner(const Field& u, const Field& v) {
  if (u.grid != v.grid) throw std::invalid_argument("inner: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.samples.size(); ++i)
    s += u.samples[i] * v.samples[i];
  return s * u.grid.cell_volume();
}

double mass(const Field& u) {
  double s = 0.0;
  for (double v : u.samples) s += v * v;
  return s * u.grid.cell_volume();
}

double lp_norm_p(const Field& u, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm_p: p must be >= 1");
  double s = 0.0;
  if (p == 2.0) {
    for (double v : u.samples) s += v * v;
  } else {
    for (double v : u.samples) s += std::pow(std::fabs(v), p);
  }
  return s * u.grid.cell_volume();
}

Field project_mass(const Field& u, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("project_mass: c must be positive");
  double m = mass(u);
  if (m <= 0.0)
    throw std::invalid_argument("project_mass: zero field");
  double scale = std::sqrt(c / m);
  Field out = u;
  for (double& v : out.samples) v *= scale;
  return out;
}

double support_radius(const Field& u) {
  double peak = 0.0;
  for (double v : u.samples) peak = std::max(peak, std::fabs(v));
  if (peak == 0.0) return 0.0;
  const double thr = 1e-12 * peak;
  double r = 0.0;
  for (std::size_t i = 0; i < u.samples.size(); ++i) {
    if (std::fabs(u.samples[i]) > thr) {
      auto x = u.grid.point(i);
      double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      r = std::max(r, n2);
    }
  }
  return std::sqrt(r);
}

double signed_pow(double v, double e) {
  if (v == 0.0) return 0.0;
  double m = std::pow(std::fabs(v), e);
  return v > 0.0 ? m : -m;
}

namespace {

void put_u64le(std::ofstream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64le(std::ifstream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64le(std::ofstream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64le(std::ifstream& is) {
  std::uint64_t v = get_u64le(is);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

}  // namespace

void write_kfld(const Field& u, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("kfld: cannot open for writing: " + path);
  os.write("KFLD", 4);
  char ver = 1;
  char dim = static_cast<char>(u.grid.dim);
  os.write(&ver, 1);
  os.write(&dim, 1);
  put_u64le(os, static_cast<std::uint64_t>(u.grid.points_per_dim));
  put_f64le(os, u.grid.half_width);
  for (double v : u.samples) put_f64le(os, v);
  if (!os) throw std::runtime_error("kfld: write failed: " + path);
}

Field read_kfld(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("kfld: cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "KFLD", 4) != 0)
    throw std::runtime_error("kfld: bad magic: " + path);
  char ver = 0, dim = 0;
  is.read(&ver, 1);
  is.read(&dim, 1);
  if (ver != 1) throw std::runtime_error("kfld: unsupported version");
  std::uint64_t m = get_u64le(is);
  double half_width = get_f64le(is);
  Grid g = make_grid(dim, half_width, static_cast<int>(m));
  Field u = make_field(g);
  for (double& v : u.samples) v = get_f64le(is);
  if (!is) throw std::runtime_error("kfld: truncated file: " + path);
  return u;
}

}  // namespace kirchhoff
