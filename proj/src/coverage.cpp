#include "towerplan/coverage.hpp"

#include <algorithm>

#include "towerplan/error.hpp"
#include "towerplan/scoring.hpp"

namespace towerplan {

Footprint footprint(SquarePos center, const InternalGrid& grid) {
  Footprint fp{grid.square(center), {}};
  for (int x = std::max(1, center.x - 1); x <= std::min(grid.n(), center.x + 1); ++x) {
    for (int y = std::max(1, center.y - 1); y <= std::min(grid.n(), center.y + 1); ++y) {
      fp.covered.push_back({x, y});
    }
  }
  return fp;
}

std::size_t union_size(std::span<const SquarePos> centers, const InternalGrid& grid) {
  std::vector<char> hit(grid.size(), 0);
  for (SquarePos c : centers) {
    for (SquarePos p : footprint(c, grid).covered) hit[grid.index(p)] = 1;
  }
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
}

CellCoverage cell_coverage(const InternalGrid& grid, std::span<const SquarePos> antennas) {
  std::vector<char> hit(grid.size(), 0);
  for (SquarePos c : antennas) {
    for (SquarePos p : footprint(c, grid).covered) hit[grid.index(p)] = 1;
  }
  CellCoverage cov{grid.cell(), grid.n(), 0, grid.size(), {}};
  for (std::size_t i = 0; i < hit.size(); ++i) {
    if (hit[i]) {
      ++cov.covered;
    } else {
      cov.uncovered.push_back(grid.position(i));
    }
  }
  return cov;
}

std::vector<CellId> CoverageReport::deficient_cells() const {
  std::vector<CellId> out;
  for (const auto& c : cells) {
    if (!c.full()) out.push_back(c.cell);
  }
  return out;
}

CoverageReport coverage(std::span<const Placement> placements, const ExternalGrid& grid) {
  std::vector<std::vector<SquarePos>> per_cell(grid.cells.size());
  CoverageReport report;
  for (const auto& p : placements) {
    if (p.cell.row < 0 || p.cell.row >= grid.rows || p.cell.col < 0 || p.cell.col >= grid.cols) {
      throw GridError("placement references a cell outside the external grid");
    }
    const auto& internal = grid.at(p.cell).internal;
    for (SquarePos s : p.squares) {
      if (!internal.valid(s)) throw GridError("placement references a square outside its cell");
      per_cell[static_cast<std::size_t>(p.cell.row) * grid.cols + p.cell.col].push_back(s);
      ++report.antennas;
    }
  }
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    auto cov = cell_coverage(grid.cells[i].internal, per_cell[i]);
    report.total_squares += cov.total;
    report.covered_squares += cov.covered;
    report.cells.push_back(std::move(cov));
  }
  return report;
}

}  // namespace towerplan
