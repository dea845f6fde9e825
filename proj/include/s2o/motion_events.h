#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "s2o/experience.h"
#include "s2o/trajectory.h"

namespace s2o {

enum class MotionEventKind { kUTurn, kEmergencyStop };

// An unpleasant-motion event covering frames [first, last].
struct MotionEvent {
  MotionEventKind kind;
  std::size_t first;
  std::size_t last;
  double penalty;

  bool operator==(const MotionEvent&) const = default;
};

// Greedy left-to-right scan: an event closes at the first frame j whose
// unwrapped heading differs by at least the threshold from some frame k in
// the trailing window; k is the earliest such frame. Later events only look
// at frames after j. Decisions depend on past frames only.
class UTurnDetector {
 public:
  explicit UTurnDetector(const ComfortParams& cp) : cp_(cp) {}

  std::optional<MotionEvent> Push(std::size_t index, double t, double heading);

 private:
  struct Sample {
    std::size_t index;
    double t;
    double unwrapped;
  };

  ComfortParams cp_;
  std::deque<Sample> window_;
  bool has_prev_ = false;
  double prev_heading_ = 0.0;
  double unwrapped_ = 0.0;
};

// Runs of consecutive frames with accel_long <= -threshold. A run qualifies
// when t_last - t_first plus one sample period reaches the minimum duration;
// the period is the gap just before the run (or after frame 0 for a run that
// starts the case).
class EmergencyStopDetector {
 public:
  explicit EmergencyStopDetector(const ComfortParams& cp) : cp_(cp) {}

  // Returns the event of a qualifying run that ended at the previous frame.
  std::optional<MotionEvent> Push(std::size_t index, double t,
                                  double accel_long);
  // Closes a run still open at the end of the data.
  std::optional<MotionEvent> Finish() const;

  bool InRun() const { return in_run_; }

 private:
  std::optional<MotionEvent> Close() const;

  ComfortParams cp_;
  bool in_run_ = false;
  std::size_t run_first_ = 0;
  std::size_t run_last_ = 0;
  double run_first_t_ = 0.0;
  double run_last_t_ = 0.0;
  double run_period_ = 0.0;
  std::size_t count_ = 0;
  double prev_t_ = 0.0;
  double t0_ = 0.0;
};

struct UnpleasantMotionLoss {
  std::vector<double> loss;  // per frame
  std::vector<MotionEvent> events;
};

// Requires derived kinematics.
UnpleasantMotionLoss ComputeUnpleasantMotionLoss(const DrivingCase& c,
                                                 const ComfortParams& cp);

}  // namespace s2o
