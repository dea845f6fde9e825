#include "s2o/ratings.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "s2o/errors.h"

namespace s2o {

namespace {

using nlohmann::json;

double PopulationVariance(const std::vector<double>& v) {
  double mean = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    mean += x;
    ++n;
  }
  if (n < 2) return 0.0;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) {
    if (!std::isnan(x)) ss += (x - mean) * (x - mean);
  }
  return ss / static_cast<double>(n);
}

}  // namespace

RaterFilterResult FilterRaters(const std::vector<std::vector<double>>& scores,
                               const RaterFilterOptions& options) {
  RaterFilterResult result;
  std::vector<std::size_t> candidates;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    if (PopulationVariance(scores[r]) < options.min_variance) {
      result.dropped_low_variance.push_back(r);
    } else {
      candidates.push_back(r);
    }
  }

  for (std::size_t r : candidates) {
    double total = 0.0;
    std::size_t compared = 0;
    for (std::size_t c = 0; c < scores[r].size(); ++c) {
      const double own = scores[r][c];
      if (std::isnan(own)) continue;
      double sum = 0.0;
      std::size_t others = 0;
      for (std::size_t q : candidates) {
        if (q == r || c >= scores[q].size() || std::isnan(scores[q][c])) {
          continue;
        }
        sum += scores[q][c];
        ++others;
      }
      if (others == 0) continue;
      total += std::abs(own - sum / static_cast<double>(others));
      ++compared;
    }
    if (compared > 0 &&
        total / static_cast<double>(compared) > options.max_offset) {
      result.dropped_offset.push_back(r);
    } else {
      result.retained.push_back(r);
    }
  }
  if (result.retained.empty()) throw FitError("all raters dropped");
  return result;
}

std::vector<std::vector<double>> RaterMatrix(std::span<const RatedCase> cases) {
  std::size_t raters = 0;
  for (const RatedCase& c : cases) raters = std::max(raters, c.ratings.size());
  std::vector<std::vector<double>> m(
      raters, std::vector<double>(cases.size(),
                                  std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t c = 0; c < cases.size(); ++c) {
    for (std::size_t r = 0; r < cases[c].ratings.size(); ++r) {
      m[r][c] = cases[c].ratings[r];
    }
  }
  return m;
}

GroundTruth ComputeGroundTruth(std::span<const double> ratings,
                               const SegmentThresholds& thresholds,
                               std::string id) {
  std::vector<double> v;
  v.reserve(ratings.size());
  for (double x : ratings) {
    if (!std::isnan(x)) v.push_back(x);
  }
  if (v.empty()) throw FitError("case '" + id + "' has no ratings");
  std::sort(v.begin(), v.end());

  GroundTruth gt;
  gt.id = std::move(id);
  std::size_t cut = 0;
  if (v.size() >= 10) {
    cut = (v.size() + 9) / 10;  // ceil(10%)
  } else {
    gt.trimmed = false;
  }
  const auto first = v.begin() + static_cast<std::ptrdiff_t>(cut);
  const auto last = v.end() - static_cast<std::ptrdiff_t>(cut);
  gt.score = std::accumulate(first, last, 0.0) /
             static_cast<double>(std::distance(first, last));
  gt.label = thresholds.LevelOf(gt.score);
  return gt;
}

std::vector<RatedCase> ParseRatedDataset(std::istream& in) {
  std::vector<RatedCase> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (j.contains("schema")) {
      if (j["schema"] != kRatedSchema) {
        throw ParseError("unsupported rated-dataset schema", line_no);
      }
      continue;
    }
    try {
      RatedCase c;
      c.id = j.at("id").is_string() ? j.at("id").get<std::string>()
                                    : j.at("id").dump();
      TermVector terms{};
      for (std::size_t i = 0; i < kNumTerms; ++i) {
        terms[i] = j.at("terms")
                       .at(std::string(ToString(static_cast<Term>(i))))
                       .get<double>();
      }
      c.terms = TermScores::FromArray(terms);
      for (const json& r : j.at("ratings")) {
        if (r.is_null()) {
          c.ratings.push_back(std::numeric_limits<double>::quiet_NaN());
          continue;
        }
        const double score = r.get<double>();
        if (!(score >= 0.0 && score <= 100.0)) {
          throw ParseError("rating outside [0, 100]", line_no);
        }
        c.ratings.push_back(score);
      }
      c.crash = j.value("crash", false);
      out.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad rated case: ") + e.what(), line_no);
    }
  }
  return out;
}

std::vector<RatedCase> ParseRatedDatasetFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open rated dataset '" + path + "'");
  return ParseRatedDataset(in);
}

void WriteRatedDataset(std::span<const RatedCase> cases, std::ostream& out) {
  out << json{{"schema", kRatedSchema}}.dump() << '\n';
  for (const RatedCase& c : cases) {
    json terms = json::object();
    const TermVector v = c.terms.AsArray();
    for (std::size_t i = 0; i < kNumTerms; ++i) {
      terms[std::string(ToString(static_cast<Term>(i)))] = v[i];
    }
    json ratings = json::array();
    for (double r : c.ratings) {
      if (std::isnan(r)) {
        ratings.push_back(nullptr);
      } else {
        ratings.push_back(r);
      }
    }
    out << json{{"id", c.id},
                {"terms", terms},
                {"ratings", ratings},
                {"crash", c.crash}}
               .dump()
        << '\n';
  }
}

}  // namespace s2o
