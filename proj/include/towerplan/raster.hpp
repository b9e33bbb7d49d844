#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "towerplan/error.hpp"
#include "towerplan/geometry.hpp"

namespace towerplan {

/// ESRI ASCII-grid elevation raster. Row 0 is the northern-most row.
struct ElevationRaster {
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cell_size_m = 1.0;
  double nodata = -9999.0;
  std::vector<double> values;

  double at(int row, int col) const { return values[static_cast<std::size_t>(row) * ncols + col]; }
  bool is_nodata(double v) const { return v == nodata; }
  double width_m() const { return ncols * cell_size_m; }
  double height_m() const { return nrows * cell_size_m; }
  Rect extent() const { return {xllcorner, yllcorner, xllcorner + width_m(), yllcorner + height_m()}; }
  /// Center of raster cell (row, col) in the planar frame.
  Point cell_center(int row, int col) const {
    return {xllcorner + (col + 0.5) * cell_size_m, yllcorner + height_m() - (row + 0.5) * cell_size_m};
  }
};

enum class RasterErrorKind {
  MalformedHeader,
  RowLengthMismatch,
  NonNumericValue,
  RowCountMismatch,
};

class RasterParseError : public Error {
 public:
  RasterParseError(RasterErrorKind kind, std::size_t line, const std::string& detail);

  RasterErrorKind kind() const noexcept { return kind_; }
  /// 1-based line number in the input.
  std::size_t line() const noexcept { return line_; }

 private:
  RasterErrorKind kind_;
  std::size_t line_;
};

ElevationRaster parse_raster(std::istream& in);
ElevationRaster ingest_raster(const std::filesystem::path& path);

/// Canonical text form; parse_raster(serialize_raster(r)) == r and
/// serialize_raster is byte-stable over that round trip.
std::string serialize_raster(const ElevationRaster& raster);

}  // namespace towerplan
