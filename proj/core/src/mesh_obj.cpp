#include "whitham/mesh_obj.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "whitham/geometry.hpp"

namespace whitham {

namespace {

void write_grid(std::ostream& os, const FrameGrid& g, int& next_id) {
  std::vector<int> vid(static_cast<std::size_t>(g.n_u) * g.n_v, 0);
  char buf[128];
  for (int i = 0; i < g.n_u; ++i) {
    for (int j = 0; j < g.n_v; ++j) {
      const int n = g.idx(i, j);
      if (!g.valid[n]) continue;
      const Eigen::Vector4d x = su2_to_r4(g.f[n]);
      const double den = 1.0 + x(0);
      if (std::abs(den) < 1e-12)
        throw std::domain_error("mesh export: vertex at the projection pole");
      std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", x(1) / den, x(2) / den,
                    x(3) / den);
      os << buf;
      vid[n] = next_id++;
    }
  }
  for (int i = 0; i + 1 < g.n_u; ++i) {
    for (int j = 0; j + 1 < g.n_v; ++j) {
      const int a = vid[g.idx(i, j)];
      const int b = vid[g.idx(i + 1, j)];
      const int c = vid[g.idx(i + 1, j + 1)];
      const int d = vid[g.idx(i, j + 1)];
      if (!a || !b || !c || !d) continue;
      std::snprintf(buf, sizeof buf, "f %d %d %d\nf %d %d %d\n", a, b, c, a, c, d);
      os << buf;
    }
  }
}

}  // namespace

void write_mesh_obj(std::ostream& os, const ImmersionPatch& patch) {
  os << "# stereographic image of a fundamental piece of a surface in the 3-sphere\n";
  os << "# projection pole (-1,0,0,0); the identity frame maps to the origin\n";
  os << "# symmetry order " << patch.symmetry_order
     << ": the full surface is that many copies of this piece under a cyclic"
        " ambient isometry\n";
  os << "# double cover deck transform: z -> -z\n";
  int next_id = 1;
  write_grid(os, patch.chart_z, next_id);
  write_grid(os, patch.chart_w, next_id);
  write_grid(os, patch.caps[0], next_id);
  write_grid(os, patch.caps[1], next_id);
}

std::string mesh_obj_string(const ImmersionPatch& patch) {
  std::ostringstream os;
  write_mesh_obj(os, patch);
  return os.str();
}

}  // namespace whitham
