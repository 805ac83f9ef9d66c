#include "pharos/terrain.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace pharos {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Whitespace tokenizer that remembers which 1-based line each token came from.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (pos_ >= line_.size()) {
      if (!std::getline(in_, line_)) return false;
      ++line_no_;
      pos_ = 0;
      skip_ws();
    }
    size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
    tok = line_.substr(start, pos_ - start);
    skip_ws();
    return true;
  }

  int line_no() const { return line_no_; }

 private:
  void skip_ws() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  std::istream& in_;
  std::string line_;
  size_t pos_ = 0;
  int line_no_ = 0;
};

double parse_double_tok(const std::string& tok, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("invalid number '" + tok + "'", line);
  return v;
}

int parse_int_tok(const std::string& tok, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("invalid integer '" + tok + "'", line);
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

GeoPoint HeightGrid::cell_center(int row, int col) const {
  double lon = xllcorner + (col + 0.5) * cellsize;
  double lat = yllcorner + (nrows - row - 0.5) * cellsize;
  return GeoPoint(lat, lon);
}

HeightGrid load_ascii_grid(std::istream& in) {
  TokenReader tr(in);
  HeightGrid g;

  auto expect_header = [&](const char* key) -> std::string {
    std::string k, v;
    if (!tr.next(k))
      throw ParseError(std::string("missing header '") + key + "'", tr.line_no());
    if (lower(k) != key)
      throw ParseError(std::string("expected header '") + key + "', got '" + k + "'", tr.line_no());
    if (!tr.next(v))
      throw ParseError(std::string("missing value for '") + key + "'", tr.line_no());
    return v;
  };

  // sequence the reads: line_no() must be sampled after the token is consumed
  auto header_int = [&](const char* key) {
    std::string v = expect_header(key);
    return parse_int_tok(v, tr.line_no());
  };
  auto header_double = [&](const char* key) {
    std::string v = expect_header(key);
    return parse_double_tok(v, tr.line_no());
  };
  g.ncols = header_int("ncols");
  g.nrows = header_int("nrows");
  g.xllcorner = header_double("xllcorner");
  g.yllcorner = header_double("yllcorner");
  g.cellsize = header_double("cellsize");
  if (g.ncols < 2 || g.nrows < 2)
    throw DimensionError("grid must be at least 2x2, got " + std::to_string(g.ncols) + "x" +
                         std::to_string(g.nrows));
  if (!(g.cellsize > 0.0)) throw ParseError("cellsize must be positive", tr.line_no());

  std::string tok;
  bool have_tok = tr.next(tok);
  if (have_tok && lower(tok) == "nodata_value") {
    std::string v;
    if (!tr.next(v)) throw ParseError("missing value for 'nodata_value'", tr.line_no());
    g.nodata_value = parse_double_tok(v, tr.line_no());
    have_tok = tr.next(tok);
  }

  const size_t total = static_cast<size_t>(g.ncols) * static_cast<size_t>(g.nrows);
  g.values.reserve(total);
  while (g.values.size() < total) {
    if (!have_tok)
      throw ParseError("expected " + std::to_string(total) + " values, got " +
                           std::to_string(g.values.size()),
                       tr.line_no());
    g.values.push_back(parse_double_tok(tok, tr.line_no()));
    have_tok = tr.next(tok);
  }
  if (have_tok) throw ParseError("unexpected trailing data '" + tok + "'", tr.line_no());
  return g;
}

HeightGrid load_ascii_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_ascii_grid(in);
}

HeightSample sample_height(const HeightGrid& grid, const GeoPoint& p) {
  // Fractional position in cell-centre coordinates, measured from the
  // south-west cell centre.
  double fx = (p.lon - grid.xllcorner) / grid.cellsize - 0.5;
  double fy = (p.lat - grid.yllcorner) / grid.cellsize - 0.5;
  if (fx < 0.0 || fx > grid.ncols - 1 || fy < 0.0 || fy > grid.nrows - 1)
    return {HeightSample::Status::OutOfBounds, 0.0};

  int c0 = std::min(static_cast<int>(std::floor(fx)), grid.ncols - 2);
  int r0 = std::min(static_cast<int>(std::floor(fy)), grid.nrows - 2);  // rows from south
  double u = fx - c0;
  double v = fy - r0;

  // Storage rows count from the north.
  int rs0 = grid.nrows - 1 - r0;
  int rs1 = rs0 - 1;
  const double h[4] = {grid.at(rs0, c0), grid.at(rs0, c0 + 1), grid.at(rs1, c0),
                       grid.at(rs1, c0 + 1)};
  const double w[4] = {(1.0 - u) * (1.0 - v), u * (1.0 - v), (1.0 - u) * v, u * v};

  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (w[i] == 0.0) continue;
    if (h[i] == grid.nodata_value) return {HeightSample::Status::Nodata, 0.0};
    sum += w[i] * h[i];
  }
  return {HeightSample::Status::Ok, sum};
}

void write_ascii_grid(const HeightGrid& grid, std::ostream& out) {
  out << "ncols " << grid.ncols << "\n";
  out << "nrows " << grid.nrows << "\n";
  out << "xllcorner " << format_double(grid.xllcorner) << "\n";
  out << "yllcorner " << format_double(grid.yllcorner) << "\n";
  out << "cellsize " << format_double(grid.cellsize) << "\n";
  bool has_nodata =
      std::find(grid.values.begin(), grid.values.end(), grid.nodata_value) != grid.values.end();
  if (has_nodata || grid.nodata_value != -9999.0)
    out << "nodata_value " << format_double(grid.nodata_value) << "\n";
  for (int r = 0; r < grid.nrows; ++r) {
    for (int c = 0; c < grid.ncols; ++c) {
      if (c) out << ' ';
      out << format_double(grid.at(r, c));
    }
    out << "\n";
  }
}

}  // namespace pharos
