#pragma once

#include <stdexcept>
#include <string>

namespace pharos {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is out of its documented domain.
class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

/// Bearing requested between two points closer than 1e-12 degrees on both axes.
class CoincidentPointsError : public Error {
 public:
  using Error::Error;
};

/// Local tangent-plane projection requested beyond its validity radius.
class OutOfProjectionRangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document. `line()` is 1-based; 0 when no position applies.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, long line = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Grid dimensions below the minimum (2x2) or otherwise unusable.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Observer position outside the terrain grid's cell-centre hull.
class ObserverOutsideGridError : public Error {
 public:
  using Error::Error;
};

/// Classified-image manifest with no data rows.
class EmptyManifestError : public Error {
 public:
  using Error::Error;
};

/// A manifest row that cannot be parsed. `row()` is the 1-based file line.
class MalformedRecordError : public Error {
 public:
  explicit MalformedRecordError(const std::string& what, long row = 0)
      : Error(row > 0 ? what + " (line " + std::to_string(row) + ")" : what),
        row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

/// Sliding window larger than the image level it is applied to.
class WindowLargerThanImageError : public Error {
 public:
  using Error::Error;
};

/// Image too small to host even one pyramid level.
class ImageSmallerThanWindowError : public Error {
 public:
  using Error::Error;
};

/// Metric evaluation over zero records.
class EmptyRecordSetError : public Error {
 public:
  using Error::Error;
};

/// Route document whose geometry is not a single LineString / track / route.
class UnsupportedGeometryError : public Error {
 public:
  using Error::Error;
};

/// Route with fewer than two distinct waypoints.
class TooFewPointsError : public Error {
 public:
  using Error::Error;
};

}  // namespace pharos
