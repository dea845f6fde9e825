#include "s2o/svm.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "s2o/errors.h"

namespace s2o {

namespace {

// The trainer sees z = (x - 80) / 20 with a constant fifth feature, which
// keeps the normalized scores near the unit scale Pegasos expects.
constexpr double kCenter = 80.0;
constexpr double kScale = 20.0;
constexpr std::size_t kDim = kNumTerms + 1;

using Params = std::array<double, kDim>;
using Features = std::array<double, kDim>;

Features Standardize(const NormalizedScores& x) {
  Features z{};
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    z[i] = (x.values[i] - kCenter) / kScale;
  }
  z[kNumTerms] = 1.0;
  return z;
}

LinearBoundary ToBoundary(const Params& p) {
  LinearBoundary b;
  b.bias = p[kNumTerms];
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    b.w[i] = p[i] / kScale;
    b.bias -= p[i] * kCenter / kScale;
  }
  return b;
}

Params FromBoundary(const LinearBoundary& b) {
  Params p{};
  p[kNumTerms] = b.bias;
  for (std::size_t i = 0; i < kNumTerms; ++i) {
    p[i] = b.w[i] * kScale;
    p[kNumTerms] += b.w[i] * kCenter;
  }
  return p;
}

double Dot(const Params& p, const Features& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) s += p[i] * z[i];
  return s;
}

double Objective(const Params& p, const std::vector<Features>& z,
                 std::span<const int> y, double lambda) {
  double reg = 0.0;
  for (double v : p) reg += v * v;
  double hinge = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    hinge += std::max(0.0, 1.0 - y[i] * Dot(p, z[i]));
  }
  return 0.5 * lambda * reg + hinge / static_cast<double>(z.size());
}

}  // namespace

double SvmObjective(const LinearBoundary& boundary,
                    std::span<const NormalizedScores> x,
                    std::span<const int> labels, double lambda) {
  if (x.size() != labels.size() || x.empty()) {
    throw FitError("SVM objective needs matching, non-empty inputs");
  }
  std::vector<Features> z;
  z.reserve(x.size());
  for (const NormalizedScores& s : x) z.push_back(Standardize(s));
  return Objective(FromBoundary(boundary), z, labels, lambda);
}

BinarySvmResult TrainBinarySvm(std::span<const NormalizedScores> x,
                               std::span<const int> labels,
                               const SvmTrainOptions& options) {
  if (x.size() != labels.size()) throw FitError("SVM label count mismatch");
  if (x.empty()) throw FitError("SVM training set is empty");
  if (!(options.lambda > 0.0) || options.epochs == 0 ||
      options.batch_size == 0) {
    throw FitError("invalid SVM training options");
  }
  for (int y : labels) {
    if (y != 1 && y != -1) throw FitError("SVM labels must be +1 or -1");
  }

  BinarySvmResult result;
  const bool has_pos = std::find(labels.begin(), labels.end(), 1) != labels.end();
  const bool has_neg = std::find(labels.begin(), labels.end(), -1) != labels.end();
  if (!has_pos || !has_neg) {
    result.degenerate = true;
    result.boundary.bias = has_pos ? 1.0 : -1.0;
    return result;
  }

  std::vector<Features> z;
  z.reserve(x.size());
  for (const NormalizedScores& s : x) z.push_back(Standardize(s));

  const std::size_t n = z.size();
  const std::size_t batch = std::min(options.batch_size, n);
  const double lambda = options.lambda;
  const double radius = 1.0 / std::sqrt(lambda);

  std::mt19937_64 rng(options.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  Params w{};
  Params avg{};
  std::size_t averaged = 0;
  Params best{};
  double best_obj = Objective(best, z, labels, lambda);
  std::size_t step = 0;

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch) {
      ++step;
      const std::size_t stop = std::min(start + batch, n);
      Params grad{};
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = order[k];
        if (labels[i] * Dot(w, z[i]) < 1.0) {
          for (std::size_t d = 0; d < kDim; ++d) grad[d] += labels[i] * z[i][d];
        }
      }
      const double eta = 1.0 / (lambda * static_cast<double>(step));
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      double norm2 = 0.0;
      for (std::size_t d = 0; d < kDim; ++d) {
        w[d] = (1.0 - eta * lambda) * w[d] + eta * inv_batch * grad[d];
        norm2 += w[d] * w[d];
      }
      if (norm2 > radius * radius) {
        const double s = radius / std::sqrt(norm2);
        for (double& v : w) v *= s;
      }
      // Averaging starts with the second epoch; the first steps are
      // dominated by the 1/t learning rate.
      if (epoch > 0 || options.epochs == 1) {
        ++averaged;
        const double f = 1.0 / static_cast<double>(averaged);
        for (std::size_t d = 0; d < kDim; ++d) avg[d] += f * (w[d] - avg[d]);
      }
    }
    for (const Params* candidate : {&w, &avg}) {
      if (candidate == &avg && averaged == 0) continue;
      const double obj = Objective(*candidate, z, labels, lambda);
      if (obj < best_obj) {
        best_obj = obj;
        best = *candidate;
      }
    }
    result.objective_history.push_back(best_obj);
  }
  result.boundary = ToBoundary(best);
  return result;
}

SvmTrainResult TrainSvm(std::span<const NormalizedScores> x,
                        std::span<const SegmentLevel> levels,
                        const SvmTrainOptions& options) {
  if (x.size() != levels.size()) throw FitError("SVM label count mismatch");
  std::array<std::size_t, kNumLevels> counts{};
  for (SegmentLevel l : levels) ++counts[static_cast<std::size_t>(l)];
  const auto present = std::count_if(counts.begin(), counts.end(),
                                     [](std::size_t c) { return c > 0; });
  if (present < 2) throw FitError("segment classifier needs at least two levels");

  std::vector<int> y(levels.size());
  SvmTrainResult result;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    y[i] = levels[i] == SegmentLevel::kLow ? -1 : 1;
  }
  result.low_mid = TrainBinarySvm(x, y, options);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    y[i] = levels[i] == SegmentLevel::kHigh ? 1 : -1;
  }
  SvmTrainOptions second = options;
  second.seed = options.seed + 1;
  result.mid_high = TrainBinarySvm(x, y, second);
  result.model.low_mid = result.low_mid.boundary;
  result.model.mid_high = result.mid_high.boundary;
  return result;
}

}  // namespace s2o
