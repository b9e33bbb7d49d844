#include "towerplan/raster.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace towerplan {

namespace {

const char* kind_name(RasterErrorKind kind) {
  switch (kind) {
    case RasterErrorKind::MalformedHeader: return "malformed header";
    case RasterErrorKind::RowLengthMismatch: return "row length mismatch";
    case RasterErrorKind::NonNumericValue: return "non-numeric value";
    case RasterErrorKind::RowCountMismatch: return "row count mismatch";
  }
  return "parse error";
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void append_number(std::string& out, double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

}  // namespace

RasterParseError::RasterParseError(RasterErrorKind kind, std::size_t line, const std::string& detail)
    : Error("raster line " + std::to_string(line) + ": " + kind_name(kind) + ": " + detail), kind_(kind), line_(line) {}

ElevationRaster parse_raster(std::istream& in) {
  static const std::array<std::string, 6> kKeys{"ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"};

  std::map<std::string, double> header;
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::vector<std::string>> pending;  // first data row, read while scanning the header

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (to_double(toks[0])) {
      pending = std::move(toks);
      break;
    }
    const std::string key = lower(toks[0]);
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "unknown key '" + toks[0] + "'");
    }
    if (toks.size() != 2) throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "expected '<key> <value>'");
    if (header.count(key)) throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "duplicate key " + key);
    auto v = to_double(toks[1]);
    if (!v) throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "bad value for " + key);
    header[key] = *v;
  }

  for (const auto& key : {"ncols", "nrows", "xllcorner", "yllcorner", "cellsize"}) {
    if (!header.count(key)) {
      throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, std::string("missing ") + key);
    }
  }

  ElevationRaster r;
  const double ncols = header["ncols"];
  const double nrows = header["nrows"];
  if (ncols < 1 || nrows < 1 || ncols != std::floor(ncols) || nrows != std::floor(nrows)) {
    throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "ncols/nrows must be positive integers");
  }
  if (!(header["cellsize"] > 0)) throw RasterParseError(RasterErrorKind::MalformedHeader, lineno, "cellsize must be > 0");
  r.ncols = static_cast<int>(ncols);
  r.nrows = static_cast<int>(nrows);
  r.xllcorner = header["xllcorner"];
  r.yllcorner = header["yllcorner"];
  r.cell_size_m = header["cellsize"];
  if (header.count("nodata_value")) r.nodata = header["nodata_value"];
  r.values.reserve(static_cast<std::size_t>(r.ncols) * r.nrows);

  int rows_read = 0;
  auto take_row = [&](const std::vector<std::string>& toks) {
    if (rows_read == r.nrows) {
      throw RasterParseError(RasterErrorKind::RowCountMismatch, lineno,
                             "more than nrows=" + std::to_string(r.nrows) + " data rows");
    }
    if (static_cast<int>(toks.size()) != r.ncols) {
      throw RasterParseError(RasterErrorKind::RowLengthMismatch, lineno,
                             "expected " + std::to_string(r.ncols) + " values, got " + std::to_string(toks.size()));
    }
    for (const auto& t : toks) {
      auto v = to_double(t);
      if (!v) throw RasterParseError(RasterErrorKind::NonNumericValue, lineno, "'" + t + "'");
      r.values.push_back(*v);
    }
    ++rows_read;
  };

  if (pending) take_row(*pending);
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    take_row(toks);
  }
  if (rows_read != r.nrows) {
    throw RasterParseError(RasterErrorKind::RowCountMismatch, lineno,
                           "expected " + std::to_string(r.nrows) + " rows, got " + std::to_string(rows_read));
  }
  return r;
}

ElevationRaster ingest_raster(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open raster file " + path.string());
  return parse_raster(in);
}

std::string serialize_raster(const ElevationRaster& raster) {
  std::string out;
  auto field = [&](const char* key, double v) {
    out += key;
    out += ' ';
    append_number(out, v);
    out += '\n';
  };
  field("ncols", raster.ncols);
  field("nrows", raster.nrows);
  field("xllcorner", raster.xllcorner);
  field("yllcorner", raster.yllcorner);
  field("cellsize", raster.cell_size_m);
  field("NODATA_value", raster.nodata);
  for (int row = 0; row < raster.nrows; ++row) {
    for (int col = 0; col < raster.ncols; ++col) {
      if (col) out += ' ';
      append_number(out, raster.at(row, col));
    }
    out += '\n';
  }
  return out;
}

}  // namespace towerplan
