#include <algorithm>
#include <future>
#include <random>
#include <thread>

#include "s2o/errors.h"
#include "s2o/harness.h"
#include "s2o/kinematics.h"

namespace s2o {

std::vector<RatedCase> SyntheticRatingOracle(
    std::span<const EvaluationReport> reports, const SegmentWeights& truth,
    double sigma, std::size_t raters, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> crash_score(0.0, 20.0);
  std::vector<RatedCase> out;
  out.reserve(reports.size());
  for (const EvaluationReport& r : reports) {
    RatedCase c;
    c.id = r.case_id;
    c.terms = r.raw;
    c.crash = r.crash;
    const double clean = Integrate(r.normalized, truth, r.segment);
    for (std::size_t k = 0; k < raters; ++k) {
      if (r.crash) {
        c.ratings.push_back(crash_score(rng));
      } else {
        const double e = sigma > 0.0 ? sigma * noise(rng) : 0.0;
        c.ratings.push_back(std::clamp(clean + e, 0.0, 100.0));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CorpusEntry> SimulateCorpus(std::size_t count, std::uint64_t seed,
                                        const EvaluationParams& params) {
  std::vector<CorpusEntry> out(count);
  auto run = [&](std::size_t i) {
    // A layout that jitters into an overlap is redrawn with the next
    // sub-seed.
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t s = (seed + i) * 1000003ULL + attempt;
      try {
        const ScenarioSpec spec = SampleScenarioSpec(s);
        const DrivingCase c = RunScenario(spec, SamplePlanner(s));
        CorpusEntry& e = out[i];
        e.id = spec.name;
        e.crash = c.crash;
        e.raw = ComputeTermScores(DeriveKinematics(c), params);
        return;
      } catch (const SimulationError&) {
        if (attempt >= 100) throw;
      }
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) run(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

LinearSvmModel BoundariesFromWeights(const SegmentWeights& w,
                                     const SegmentThresholds& t) {
  LinearSvmModel m;
  m.low_mid.w = w.row(SegmentLevel::kMid);
  m.low_mid.bias = w.offset - t.low_upper;
  m.mid_high.w = w.row(SegmentLevel::kHigh);
  m.mid_high.bias = w.offset - t.mid_upper;
  return m;
}

}  // namespace s2o
