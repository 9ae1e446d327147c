#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace factorlat {

enum class Boundary { periodic, open };

// Finite chain (dimension 1) or rectangular lattice (dimension 2).
// Site indexing is row-major: site = x + Lx*y.
struct LatticeSpec {
  int dimension = 1;  // 1 or 2
  int Lx = 0;
  int Ly = 1;  // ignored in 1D
  Boundary bc = Boundary::periodic;

  int n_sites() const { return dimension == 1 ? Lx : Lx * Ly; }
};

struct Bond {
  int i, j;  // i < j
};

// Bonds plus two-coloring of a bipartite lattice. Sublattice labels are
// 1 or 2, with sublattice(x,y) = ((x+y) mod 2) + 1.
struct Lattice {
  LatticeSpec spec;
  std::vector<Bond> bonds;
  std::vector<int> sublattice;  // per site, value 1 or 2

  int n_sites() const { return spec.n_sites(); }
};

struct Coordination {
  int bulk;   // coordination of a bulk site
  int min_z;  // smallest site coordination (boundary sites when open)
  int max_z;
};

// One translation-equivalence class of site pairs. For a square lattice with
// Lx == Ly the displacement is additionally canonicalized by the point group,
// (dx, dy) with dx >= dy >= 0.
struct DistanceClass {
  int dx = 0;
  int dy = 0;
  double distance = 0.0;  // Euclidean length of the minimum-image displacement
  std::vector<std::pair<int, int>> pairs;  // unordered pairs, first < second
  int per_site_multiplicity = 0;  // number of partners per site (periodic only)
};

struct DistanceClasses {
  std::vector<DistanceClass> classes;  // sorted by distance, then (dx, dy)
};

// Builds bonds and sublattice labels. Throws std::invalid_argument for
// lengths < 2, periodic lengths < 3 (doubled-bond ambiguity) and odd periodic
// lengths (not bipartite).
Lattice build_lattice(const LatticeSpec& spec);

Coordination coordination(const LatticeSpec& spec);

std::vector<int> site_coordinations(const Lattice& lat);

// Groups all unordered site pairs by minimum-image displacement (periodic)
// or raw displacement (open boundaries; per_site_multiplicity is left 0).
DistanceClasses distance_classes(const LatticeSpec& spec);

}  // namespace factorlat
