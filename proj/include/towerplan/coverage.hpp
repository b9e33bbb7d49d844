#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "towerplan/grid.hpp"

namespace towerplan {

struct Placement;

/// Squares covered by an omni antenna on `center`: the center and its Moore
/// neighborhood, clipped to the internal grid.
struct Footprint {
  SquareId center;
  std::vector<SquarePos> covered;  // row-major order
};

Footprint footprint(SquarePos center, const InternalGrid& grid);

/// |union of footprints| for antennas placed at `centers`.
std::size_t union_size(std::span<const SquarePos> centers, const InternalGrid& grid);

struct CellCoverage {
  CellId cell;
  int n = 1;
  std::size_t covered = 0;
  std::size_t total = 0;
  std::vector<SquarePos> uncovered;

  double fraction() const { return total ? static_cast<double>(covered) / static_cast<double>(total) : 0.0; }
  bool full() const { return covered == total; }
};

CellCoverage cell_coverage(const InternalGrid& grid, std::span<const SquarePos> antennas);

struct CoverageReport {
  std::vector<CellCoverage> cells;  // cell-id order
  std::size_t total_squares = 0;
  std::size_t covered_squares = 0;
  std::size_t antennas = 0;

  bool full() const { return covered_squares == total_squares; }
  std::vector<CellId> deficient_cells() const;
};

/// Throws GridError if a placement references a cell or square outside the grid.
CoverageReport coverage(std::span<const Placement> placements, const ExternalGrid& grid);

}  // namespace towerplan
