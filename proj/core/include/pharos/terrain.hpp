#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pharos/errors.hpp"
#include "pharos/geodesy.hpp"

namespace pharos {

/// Regular elevation raster in geographic coordinates (ESRI ASCII grid model).
///
/// `values` is row-major with row 0 the northernmost row, matching the file
/// layout. xllcorner/yllcorner locate the outer corner of the south-west cell,
/// in degrees; cellsize is the square cell edge, in degrees.
struct HeightGrid {
  int ncols = 0;
  int nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 0.0;
  double nodata_value = -9999.0;
  std::vector<double> values;

  double at(int row, int col) const { return values[row * ncols + col]; }
  double& at(int row, int col) { return values[row * ncols + col]; }

  /// Geographic position of a cell centre.
  GeoPoint cell_center(int row, int col) const;
};

/// Result of sampling a grid. Out-of-range and missing-data outcomes are
/// encoded here rather than thrown, since both are routine during ray walks.
struct HeightSample {
  enum class Status { Ok, Nodata, OutOfBounds };
  Status status = Status::OutOfBounds;
  double height_m = 0.0;
};

/// Parses an ESRI ASCII grid. Header keys are matched case-insensitively;
/// NODATA_value is optional (default -9999). Requires at least 2x2 cells
/// (DimensionError) and exactly ncols*nrows numeric values (ParseError with
/// the offending 1-based line number).
HeightGrid load_ascii_grid(std::istream& in);
HeightGrid load_ascii_grid(const std::string& path);

/// Bilinear sample between the four surrounding cell centres. Points outside
/// the cell-centre hull report OutOfBounds; interpolation never crosses
/// nodata (any contributing nodata cell makes the sample Nodata).
HeightSample sample_height(const HeightGrid& grid, const GeoPoint& p);

/// Writes the ESRI ASCII form: lowercase header keys in canonical order, one
/// row per line, LF line endings, numbers with round-trip precision. The
/// nodata_value line is emitted when the grid contains nodata cells or uses a
/// non-default marker, so load(write(g)) == g field-for-field.
void write_ascii_grid(const HeightGrid& grid, std::ostream& out);

}  // namespace pharos
