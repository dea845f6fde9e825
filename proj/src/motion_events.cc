#include "s2o/motion_events.h"

#include <cmath>

namespace s2o {

std::optional<MotionEvent> UTurnDetector::Push(std::size_t index, double t,
                                               double heading) {
  if (has_prev_) unwrapped_ += WrapAngle(heading - prev_heading_);
  prev_heading_ = heading;
  has_prev_ = true;

  window_.push_back({index, t, unwrapped_});
  while (t - window_.front().t > cp_.u_turn_window + 1e-9) window_.pop_front();
  for (const Sample& s : window_) {
    if (std::abs(unwrapped_ - s.unwrapped) >= cp_.u_turn_angle - 1e-12) {
      MotionEvent event{MotionEventKind::kUTurn, s.index, index,
                        cp_.u_turn_penalty};
      window_.clear();
      return event;
    }
  }
  return std::nullopt;
}

std::optional<MotionEvent> EmergencyStopDetector::Push(std::size_t index,
                                                       double t,
                                                       double accel_long) {
  if (count_ == 0) t0_ = t;
  if (in_run_ && run_first_ == 0 && count_ == 1) run_period_ = t - t0_;

  std::optional<MotionEvent> event;
  if (accel_long <= -cp_.emergency_decel) {
    if (!in_run_) {
      in_run_ = true;
      run_first_ = index;
      run_first_t_ = t;
      run_period_ = count_ > 0 ? t - prev_t_ : 0.0;
    }
    run_last_ = index;
    run_last_t_ = t;
  } else if (in_run_) {
    event = Close();
    in_run_ = false;
  }
  prev_t_ = t;
  ++count_;
  return event;
}

std::optional<MotionEvent> EmergencyStopDetector::Finish() const {
  if (!in_run_) return std::nullopt;
  return Close();
}

std::optional<MotionEvent> EmergencyStopDetector::Close() const {
  const double duration = run_last_t_ - run_first_t_ + run_period_;
  if (duration < cp_.emergency_min_duration - 1e-9) return std::nullopt;
  return MotionEvent{MotionEventKind::kEmergencyStop, run_first_, run_last_,
                     cp_.emergency_stop_penalty};
}

UnpleasantMotionLoss ComputeUnpleasantMotionLoss(const DrivingCase& c,
                                                 const ComfortParams& cp) {
  UnpleasantMotionLoss out;
  out.loss.assign(c.frames.size(), 0.0);
  UTurnDetector u_turn(cp);
  EmergencyStopDetector stop(cp);
  for (std::size_t i = 0; i < c.frames.size(); ++i) {
    const SceneFrame& f = c.frames[i];
    if (auto e = u_turn.Push(i, f.t, f.ego.heading)) out.events.push_back(*e);
    if (auto e = stop.Push(i, f.t, f.ego.accel_long)) out.events.push_back(*e);
  }
  if (auto e = stop.Finish()) out.events.push_back(*e);
  for (const MotionEvent& e : out.events) {
    for (std::size_t i = e.first; i <= e.last; ++i) out.loss[i] += e.penalty;
  }
  return out;
}

}  // namespace s2o
