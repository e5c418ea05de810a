#include "glv/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace glv {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

static void write_grid_line(std::ostream& os, const ComplexField& u) {
  const UniformGrid& g = u.grid;
  os << g.dim << ' ' << g.n << ' ' << format_g17(g.side);
  for (int d = 0; d < g.dim; ++d) os << ' ' << format_g17(g.origin[d]);
  if (u.bc == FieldBC::MagneticPeriodic)
    os << " mperiodic " << format_g17(u.flux);
  else
    os << " natural";
  os << '\n';
}

void dump_field(const ComplexField& u, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "GLFIELD 1\n";
  write_grid_line(os, u);
  for (const Complex& z : u.values)
    os << format_g17(z.real()) << ' ' << format_g17(z.imag()) << '\n';
  if (!os) throw std::runtime_error("write failed: " + path);
}

ComplexField load_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "GLFIELD" || version != 1) throw std::runtime_error("bad field header: " + path);
  int dim = 0, n = 0;
  double side = 0.0;
  is >> dim >> n >> side;
  if (dim != 2 && dim != 3) throw std::runtime_error("bad field dim: " + path);
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) is >> origin[d];
  std::string bc;
  is >> bc;
  ComplexField u;
  u.grid.dim = dim;
  u.grid.n = n;
  u.grid.side = side;
  u.grid.origin = origin;
  if (bc == "mperiodic") {
    u.grid.periodic = true;
    u.bc = FieldBC::MagneticPeriodic;
    is >> u.flux;
  } else if (bc == "natural") {
    u.grid.periodic = false;
    u.bc = FieldBC::Natural;
  } else {
    throw std::runtime_error("bad field bc tag: " + path);
  }
  u.values.resize(u.grid.num_sites());
  for (Complex& z : u.values) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) throw std::runtime_error("truncated field file: " + path);
    z = Complex(re, im);
  }
  return u;
}

void dump_links(const LinkPhases& l, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  const UniformGrid& g = l.grid;
  os << "GLLINKS 1\n";
  os << g.dim << ' ' << g.n << ' ' << format_g17(g.side);
  for (int d = 0; d < g.dim; ++d) os << ' ' << format_g17(g.origin[d]);
  os << ' ' << (g.periodic ? "periodic" : "natural") << ' ' << format_g17(l.coupling) << '\n';
  for (int d = 0; d < g.dim; ++d) {
    os << "axis " << d << '\n';
    for (double t : l.theta[d]) os << format_g17(t) << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(std::vector<std::pair<std::string, std::string>> kv) {
  std::sort(kv.begin(), kv.end());
  std::string text;
  for (const auto& [k, v] : kv) {
    text += k;
    text += " = ";
    text += v;
    text += '\n';
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(text));
  return buf;
}

} // namespace glv
