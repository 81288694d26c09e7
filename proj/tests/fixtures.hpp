#pragma once

#include "lamb/discretize.hpp"
#include "lamb/modes.hpp"

namespace lamb::test {

inline Material benchmark(double omega = 3.0) { return make_material(2.0, 1.0, 1.0, 1.0, omega); }

struct Solved {
  Grid grid;
  DiscretePencil pencil;
  DiscreteOperator op;
  ModeSet modes;
};

inline Solved solve(const Material& m, int n, BCKind bc = BCKind::FreeFree) {
  Solved s;
  s.grid = chebyshev_grid(n, m.h);
  s.pencil = assemble_pencil(m, s.grid, bc);
  s.op = assemble_linearization(s.pencil);
  s.modes = solve_modes(s.op, s.pencil);
  return s;
}

// Free-free benchmark at n = 64, solved once per process.
inline const Solved& bench64() {
  static const Solved s = solve(benchmark(), 64);
  return s;
}

}  // namespace lamb::test
