#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pharos/errors.hpp"

namespace pharos {

struct ImageDims {
  int width_px = 0;
  int height_px = 0;
};

/// One sliding-window placement, in the pixel coordinates of its pyramid
/// level. `scale` is the ratio of the level size to the original image.
struct WindowRect {
  int level_index = 0;
  double scale = 1.0;
  int x_px = 0;
  int y_px = 0;
  int size_px = 0;
};

struct PyramidLevel {
  int level_index = 0;
  double scale = 1.0;
  ImageDims dims;
};

/// Pluggable stand-in for a trained window classifier: a deterministic score
/// in [0, 1] per (image, window) plus the decision threshold. Same inputs
/// must always produce the same score.
struct ClassifierContract {
  std::function<double(const std::string& image_id, const WindowRect&)> score;
  double threshold = 0.5;
};

/// Confusion counts plus derived metrics as ratios in [0, 1]; reports
/// multiply by 100.
struct EvalCounts {
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;
  long long tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// All window placements for one level: positions {0, step, 2·step, ...} up
/// to dim − window per axis, plus a flush dim − window position when the
/// remainder is not step-aligned; y varies slowest. Throws
/// WindowLargerThanImageError when the window exceeds either dimension.
std::vector<WindowRect> enumerate_windows(const ImageDims& level_dims, int window_px = 256,
                                          int step_px = 64, int level_index = 0,
                                          double scale = 1.0);

/// Octave image pyramid: level k has dims ⌊original/factor^k⌋, kept while
/// min(dims) ≥ min_side. Throws ImageSmallerThanWindowError when the original
/// already fails min_side.
std::vector<PyramidLevel> build_pyramid(const ImageDims& dims, double factor = 2.0,
                                        int min_side = 256);

/// Image-level decision: OR of (score ≥ threshold) over every window of every
/// pyramid level.
bool image_contains_landmark(const ClassifierContract& classifier, const std::string& image_id,
                             const ImageDims& dims);

/// Confusion counts and metrics from (predicted, truth) pairs.
/// precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = 2PR/(P+R); each 0 when
/// its denominator is 0. Throws EmptyRecordSetError on no records.
EvalCounts evaluate(const std::vector<std::pair<bool, bool>>& records);

/// Micro-average across per-landmark record sets: pools raw counts, then
/// derives the metrics once.
EvalCounts evaluate_pooled(const std::vector<std::vector<std::pair<bool, bool>>>& groups);

/// {"tp","fp","fn","tn","precision","recall","f1"} with metrics ×100 at two
/// decimals. Single line, no trailing newline.
std::string to_report_json(const EvalCounts& counts);

/// One row of an `image_id,value` CSV.
struct LabeledRecord {
  std::string image_id;
  bool value = false;
};

/// Truth CSV: header `image_id,truth`, values in {true,false}.
std::vector<LabeledRecord> parse_truth_csv(std::istream& in);

/// Prediction CSV: header `image_id,predicted`, values in {true,false} or a
/// numeric score in [0, 1] thresholded as score ≥ threshold.
std::vector<LabeledRecord> parse_prediction_csv(std::istream& in, double threshold = 0.5);

}  // namespace pharos
