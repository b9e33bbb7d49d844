#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "towerplan/geometry.hpp"
#include "towerplan/raster.hpp"

namespace towerplan {

/// External-grid cell coordinates, 0-based, row 0 at the top (north).
struct CellId {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

/// Square position inside a cell's internal grid: x is the row counted from
/// the top, y the column counted from the left, both 1-based.
struct SquarePos {
  int x = 1;
  int y = 1;

  friend auto operator<=>(const SquarePos&, const SquarePos&) = default;
};

struct SquareId {
  CellId cell;
  SquarePos pos;
  Rect bounds;
};

/// n x n subdivision of one cell. Squares tile the cell bounds exactly, so
/// their real extent is bounds/n (equal to square_side_m when the cell side
/// is a multiple of it).
class InternalGrid {
 public:
  InternalGrid(CellId cell, Rect cell_bounds, int n, double square_side_m);

  CellId cell() const { return cell_; }
  const Rect& cell_bounds() const { return cell_bounds_; }
  int n() const { return n_; }
  double square_side_m() const { return square_side_m_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  bool valid(SquarePos pos) const { return pos.x >= 1 && pos.x <= n_ && pos.y >= 1 && pos.y <= n_; }
  /// Row-major index, (1,1) -> 0.
  std::size_t index(SquarePos pos) const { return static_cast<std::size_t>(pos.x - 1) * n_ + (pos.y - 1); }
  SquarePos position(std::size_t index) const {
    return {static_cast<int>(index / n_) + 1, static_cast<int>(index % n_) + 1};
  }

  /// Throws GridError for a position outside 1..n.
  Rect bounds(SquarePos pos) const;
  SquareId square(SquarePos pos) const { return {cell_, pos, bounds(pos)}; }
  std::vector<SquareId> squares() const;

  /// Square containing p; points on the cell's far edges belong to the last
  /// row/column. nullopt outside the cell.
  std::optional<SquarePos> locate(Point p) const;

  /// Mean raster elevation over a square, nullopt when it covers only nodata.
  std::optional<double> elevation(SquarePos pos) const;
  InternalGrid with_elevation(const ElevationRaster& raster) const;

 private:
  double x_edge(int k) const;
  double y_edge(int k) const;

  CellId cell_;
  Rect cell_bounds_;
  int n_;
  double square_side_m_;
  std::vector<std::optional<double>> elevation_;
};

struct Cell {
  CellId id;
  Rect bounds;
  double nominal_side_m = 0.0;
  bool partial = false;
  InternalGrid internal;
};

struct ExternalGrid {
  double cell_side_m = 0.0;
  Rect bounds;
  int rows = 0;
  int cols = 0;
  std::vector<Cell> cells;  // row-major

  const Cell& at(CellId id) const { return cells[static_cast<std::size_t>(id.row) * cols + id.col]; }
};

/// Side of a square such that a 3x3 block of them fits in a disk of the
/// given radius around the middle square's center: 2r / (3 sqrt 2).
double square_side_for_radius(double antenna_radius_m);

/// Cells of cell_side_m tiling the raster extent from its top-left corner.
/// The last row/column is clipped and flagged partial when the extent is not
/// a multiple of the side. Each cell starts with a 1x1 internal grid.
ExternalGrid build_external_grid(const ElevationRaster& raster, double cell_side_m);

InternalGrid build_internal_grid(const Cell& cell, double antenna_radius_m,
                                 std::optional<double> square_side_override = std::nullopt);

/// Builds every cell's internal grid and samples square elevations.
ExternalGrid subdivide(ExternalGrid grid, const ElevationRaster& raster, double antenna_radius_m,
                       std::optional<double> square_side_override = std::nullopt);

struct ClassPosition {
  SquarePos pos;
  int n = 1;
};

ClassPosition square_class_position(const SquareId& square, const InternalGrid& grid);

}  // namespace towerplan
