#include "factorlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace factorlat {

namespace {

void validate(const LatticeSpec& spec) {
  if (spec.dimension != 1 && spec.dimension != 2)
    throw std::invalid_argument("lattice dimension must be 1 or 2");
  std::vector<int> lengths{spec.Lx};
  if (spec.dimension == 2) lengths.push_back(spec.Ly);
  for (int L : lengths) {
    if (L < 2) throw std::invalid_argument("lattice length must be >= 2");
    if (spec.bc == Boundary::periodic) {
      if (L < 3)
        throw std::invalid_argument(
            "periodic length < 3 creates doubled bonds; use open boundaries");
      if (L % 2 != 0)
        throw std::invalid_argument(
            "odd periodic length breaks bipartiteness (length " +
            std::to_string(L) + ")");
    }
  }
}

}  // namespace

Lattice build_lattice(const LatticeSpec& spec) {
  validate(spec);
  Lattice lat;
  lat.spec = spec;
  const int N = spec.n_sites();
  const int Lx = spec.Lx;
  const int Ly = spec.dimension == 2 ? spec.Ly : 1;
  const bool periodic = spec.bc == Boundary::periodic;

  lat.sublattice.resize(N);
  for (int y = 0; y < Ly; ++y)
    for (int x = 0; x < Lx; ++x) lat.sublattice[x + Lx * y] = ((x + y) % 2) + 1;

  std::set<std::pair<int, int>> seen;
  auto add_bond = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    if (seen.insert({a, b}).second) lat.bonds.push_back({a, b});
  };
  for (int y = 0; y < Ly; ++y) {
    for (int x = 0; x < Lx; ++x) {
      const int s = x + Lx * y;
      if (x + 1 < Lx)
        add_bond(s, s + 1);
      else if (periodic)
        add_bond(s, Lx * y);
      if (spec.dimension == 2) {
        if (y + 1 < Ly)
          add_bond(s, s + Lx);
        else if (periodic)
          add_bond(s, x);
      }
    }
  }
  return lat;
}

Coordination coordination(const LatticeSpec& spec) {
  validate(spec);
  const Lattice lat = build_lattice(spec);
  auto z = site_coordinations(lat);
  Coordination c;
  c.bulk = 2 * spec.dimension;
  c.min_z = *std::min_element(z.begin(), z.end());
  c.max_z = *std::max_element(z.begin(), z.end());
  return c;
}

std::vector<int> site_coordinations(const Lattice& lat) {
  std::vector<int> z(lat.n_sites(), 0);
  for (const auto& b : lat.bonds) {
    ++z[b.i];
    ++z[b.j];
  }
  return z;
}

DistanceClasses distance_classes(const LatticeSpec& spec) {
  validate(spec);
  const int N = spec.n_sites();
  const int Lx = spec.Lx;
  const int Ly = spec.dimension == 2 ? spec.Ly : 1;
  const bool periodic = spec.bc == Boundary::periodic;

  auto key_of = [&](int si, int sj) {
    int dx = std::abs(sj % Lx - si % Lx);
    int dy = std::abs(sj / Lx - si / Lx);
    if (periodic) {
      dx = std::min(dx, Lx - dx);
      if (spec.dimension == 2) dy = std::min(dy, Ly - dy);
    }
    if (spec.dimension == 2 && Lx == Ly && dy > dx) std::swap(dx, dy);
    return std::pair<int, int>{dx, dy};
  };

  std::map<std::pair<int, int>, DistanceClass> by_key;
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      auto key = key_of(i, j);
      auto& cls = by_key[key];
      cls.dx = key.first;
      cls.dy = key.second;
      cls.pairs.emplace_back(i, j);
    }
  }

  DistanceClasses out;
  for (auto& [key, cls] : by_key) {
    cls.distance = std::hypot(double(cls.dx), double(cls.dy));
    if (periodic) {
      // each unordered pair gives 2 ordered partners; classes are uniform
      // over sites by translation invariance
      cls.per_site_multiplicity = int(2 * cls.pairs.size()) / N;
    }
    out.classes.push_back(std::move(cls));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const DistanceClass& a, const DistanceClass& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return std::pair{a.dx, a.dy} < std::pair{b.dx, b.dy};
            });
  return out;
}

}  // namespace factorlat
