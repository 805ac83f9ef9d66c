#include "pharos/detection.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

namespace pharos {

namespace {

std::vector<int> axis_positions(int dim, int window, int step) {
  std::vector<int> pos;
  int last = dim - window;
  for (int p = 0; p <= last; p += step) pos.push_back(p);
  if (pos.back() != last) pos.push_back(last);
  return pos;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

// Shared reader for two-column id/value CSVs. The value interpreter decides
// what counts as well-formed.
std::vector<LabeledRecord> parse_two_column_csv(
    std::istream& in, const char* value_header,
    const std::function<bool(const std::string&, int)>& interpret) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedRecordError("empty file, expected CSV header");
  auto header = split_csv_line(trim(line));
  if (header.size() != 2 || lower(header[0]) != "image_id" || lower(header[1]) != value_header)
    throw MalformedRecordError(std::string("expected header 'image_id,") + value_header +
                               "', got '" + trim(line) + "'");
  std::vector<LabeledRecord> out;
  int row = 0;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    ++row;
    auto fields = split_csv_line(t);
    if (fields.size() != 2)
      throw MalformedRecordError("expected 2 fields, got " + std::to_string(fields.size()), row);
    if (fields[0].empty()) throw MalformedRecordError("empty image_id", row);
    out.push_back({fields[0], interpret(fields[1], row)});
  }
  return out;
}

}  // namespace

std::vector<WindowRect> enumerate_windows(const ImageDims& level_dims, int window_px, int step_px,
                                          int level_index, double scale) {
  if (level_dims.width_px < 1 || level_dims.height_px < 1)
    throw InvalidParamsError("image dims must be >= 1, got " +
                             std::to_string(level_dims.width_px) + "x" +
                             std::to_string(level_dims.height_px));
  if (window_px < 1 || step_px < 1) throw InvalidParamsError("window and step must be >= 1");
  if (window_px > level_dims.width_px || window_px > level_dims.height_px)
    throw WindowLargerThanImageError(
        "window " + std::to_string(window_px) + " exceeds image " +
        std::to_string(level_dims.width_px) + "x" + std::to_string(level_dims.height_px));

  auto xs = axis_positions(level_dims.width_px, window_px, step_px);
  auto ys = axis_positions(level_dims.height_px, window_px, step_px);
  std::vector<WindowRect> out;
  out.reserve(xs.size() * ys.size());
  for (int y : ys)
    for (int x : xs) out.push_back({level_index, scale, x, y, window_px});
  return out;
}

std::vector<PyramidLevel> build_pyramid(const ImageDims& dims, double factor, int min_side) {
  if (dims.width_px < 1 || dims.height_px < 1)
    throw InvalidParamsError("image dims must be >= 1");
  if (!(factor > 1.0)) throw InvalidParamsError("pyramid factor must be > 1");
  if (std::min(dims.width_px, dims.height_px) < min_side)
    throw ImageSmallerThanWindowError("image " + std::to_string(dims.width_px) + "x" +
                                      std::to_string(dims.height_px) + " smaller than min side " +
                                      std::to_string(min_side));
  std::vector<PyramidLevel> levels;
  for (int k = 0;; ++k) {
    double down = std::pow(factor, k);
    ImageDims d{static_cast<int>(std::floor(dims.width_px / down)),
                static_cast<int>(std::floor(dims.height_px / down))};
    if (std::min(d.width_px, d.height_px) < min_side) break;
    levels.push_back({k, 1.0 / down, d});
  }
  return levels;
}

bool image_contains_landmark(const ClassifierContract& classifier, const std::string& image_id,
                             const ImageDims& dims) {
  for (const auto& level : build_pyramid(dims)) {
    for (const auto& w :
         enumerate_windows(level.dims, 256, 64, level.level_index, level.scale)) {
      if (classifier.score(image_id, w) >= classifier.threshold) return true;
    }
  }
  return false;
}

EvalCounts evaluate(const std::vector<std::pair<bool, bool>>& records) {
  if (records.empty()) throw EmptyRecordSetError("no evaluation records");
  EvalCounts c;
  for (auto [predicted, truth] : records) {
    if (predicted && truth)
      ++c.tp;
    else if (predicted && !truth)
      ++c.fp;
    else if (!predicted && truth)
      ++c.fn;
    else
      ++c.tn;
  }
  c.precision = (c.tp + c.fp) ? static_cast<double>(c.tp) / (c.tp + c.fp) : 0.0;
  c.recall = (c.tp + c.fn) ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
  c.f1 = (c.precision + c.recall > 0.0)
             ? 2.0 * c.precision * c.recall / (c.precision + c.recall)
             : 0.0;
  return c;
}

EvalCounts evaluate_pooled(const std::vector<std::vector<std::pair<bool, bool>>>& groups) {
  std::vector<std::pair<bool, bool>> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  return evaluate(pooled);
}

std::string to_report_json(const EvalCounts& c) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"tp\":%lld,\"fp\":%lld,\"fn\":%lld,\"tn\":%lld,"
                "\"precision\":%.2f,\"recall\":%.2f,\"f1\":%.2f}",
                c.tp, c.fp, c.fn, c.tn, 100.0 * c.precision, 100.0 * c.recall, 100.0 * c.f1);
  return buf;
}

std::vector<LabeledRecord> parse_truth_csv(std::istream& in) {
  return parse_two_column_csv(in, "truth", [](const std::string& v, int row) {
    std::string t = lower(v);
    if (t == "true") return true;
    if (t == "false") return false;
    throw MalformedRecordError("truth must be true or false, got '" + v + "'", row);
  });
}

std::vector<LabeledRecord> parse_prediction_csv(std::istream& in, double threshold) {
  if (threshold < 0.0 || threshold > 1.0)
    throw InvalidParamsError("threshold must be in [0, 1]");
  return parse_two_column_csv(in, "predicted", [threshold](const std::string& v, int row) {
    std::string t = lower(v);
    if (t == "true") return true;
    if (t == "false") return false;
    double score = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), score);
    if (ec != std::errc{} || ptr != v.data() + v.size() || score < 0.0 || score > 1.0)
      throw MalformedRecordError(
          "predicted must be true, false, or a score in [0, 1], got '" + v + "'", row);
    return score >= threshold;
  });
}

}  // namespace pharos
