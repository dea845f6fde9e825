#pragma once

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "s2o/evaluate.h"
#include "s2o/kinematics.h"
#include "s2o/motion_events.h"

namespace s2o {

// Incremental evaluator for one frame stream. After each frame it emits the
// report EvaluateCase would give for the prefix seen so far.
//
// Trapezoid contributions are committed once every input to them is final:
// kinematics of the frame no longer depend on future samples, no future
// U-turn can reach back to it, and it is not inside an open hard-braking run.
// Only the uncommitted tail (about one U-turn window) is recomputed per
// frame. One writer per instance.
class StreamEvaluator {
 public:
  StreamEvaluator(EvaluationParams params, ScoringModel model,
                  RoadContext road, std::string stream_id = {});

  // Throws ValidationError for an out-of-order or invalid frame; the state
  // is unchanged in that case. Returns nothing until two frames are seen.
  std::optional<EvaluationReport> Push(const SceneFrame& frame);

  std::size_t frames_seen() const { return t_.size(); }
  bool crashed() const { return crash_; }
  void MarkCrashed() { crash_ = true; }

 private:
  struct PendingFrame {
    std::size_t index;
    SceneFrame frame;
  };

  double RiskAt(std::size_t i, double speed) const;
  EgoState EgoAt(std::size_t i) const;

  EvaluationParams params_;
  ScoringModel model_;
  RoadContext road_;
  std::string stream_id_;

  std::vector<double> t_, x_, y_, heading_, speed_in_;
  std::vector<double> mass_;
  std::vector<RoadSection> section_;
  std::vector<double> risk_;  // valid where the input speed was given
  std::deque<PendingFrame> pending_;  // frames whose speed is derived
  std::vector<double> u_turn_loss_;
  KinematicSeries kin_;

  UTurnDetector u_turn_;
  EmergencyStopDetector stop_at_commit_;
  std::size_t committed_ = 0;  // intervals [i, i+1] with i < committed_
  TermVector committed_integral_{};
  bool crash_ = false;
};

}  // namespace s2o
