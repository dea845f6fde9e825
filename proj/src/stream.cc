#include "s2o/stream.h"

#include <cmath>
#include <unordered_set>

#include "s2o/errors.h"
#include "s2o/geometry.h"

namespace s2o {

StreamEvaluator::StreamEvaluator(EvaluationParams params, ScoringModel model,
                                 RoadContext road, std::string stream_id)
    : params_(std::move(params)),
      model_(std::move(model)),
      road_(std::move(road)),
      stream_id_(std::move(stream_id)),
      u_turn_(params_.comfort),
      stop_at_commit_(params_.comfort) {
  params_.Validate();
  model_.Validate();
  road_.Validate();
}

double StreamEvaluator::RiskAt(std::size_t i, double speed) const {
  if (!std::isnan(speed_in_[i])) return risk_[i];
  for (const PendingFrame& p : pending_) {
    if (p.index != i) continue;
    SceneFrame f = p.frame;
    f.ego.speed = speed;
    return EgoRisk(f, params_.dsf);
  }
  return risk_[i];
}

EgoState StreamEvaluator::EgoAt(std::size_t i) const {
  EgoState e;
  e.speed = kin_.speed[i];
  e.accel_long = kin_.accel_long[i];
  e.mass = mass_[i];
  e.section = section_[i];
  return e;
}

std::optional<EvaluationReport> StreamEvaluator::Push(const SceneFrame& frame) {
  if (!t_.empty() && !(frame.t > t_.back())) {
    throw ValidationError("out-of-order frame at t=" + std::to_string(frame.t));
  }
  if (!std::isfinite(frame.t)) throw ValidationError("non-finite timestamp");
  frame.ego.Validate();
  std::unordered_set<std::string_view> ids;
  for (const AgentState& a : frame.agents) {
    a.Validate();
    if (!ids.insert(a.id).second) {
      throw ValidationError("duplicate agent id '" + a.id + "'");
    }
  }

  const std::size_t i = t_.size();
  t_.push_back(frame.t);
  x_.push_back(frame.ego.x);
  y_.push_back(frame.ego.y);
  heading_.push_back(frame.ego.heading);
  speed_in_.push_back(frame.ego.speed);
  mass_.push_back(frame.ego.mass);
  section_.push_back(frame.ego.section);
  u_turn_loss_.push_back(0.0);
  if (std::isnan(frame.ego.speed)) {
    risk_.push_back(0.0);
    pending_.push_back({i, frame});
  } else {
    risk_.push_back(EgoRisk(frame, params_.dsf));
  }
  crash_ = crash_ || FrameHasCollision(frame);
  if (auto e = u_turn_.Push(i, frame.t, frame.ego.heading)) {
    for (std::size_t k = e->first; k <= e->last; ++k) {
      u_turn_loss_[k] += e->penalty;
    }
  }

  const std::size_t n = t_.size();
  if (n < 2) return std::nullopt;

  const std::size_t first = committed_;
  DeriveKinematicSeries({t_, x_, y_, heading_, speed_in_}, first, &kin_);

  // Derived speeds settle once a frame is neither last nor in a 2-frame case.
  while (!pending_.empty() && n >= 3 && pending_.front().index + 2 <= n) {
    PendingFrame& p = pending_.front();
    p.frame.ego.speed = kin_.speed[p.index];
    risk_[p.index] = EgoRisk(p.frame, params_.dsf);
    speed_in_[p.index] = kin_.speed[p.index];
    pending_.pop_front();
  }

  // Next checkpoint: kinematics final, beyond U-turn reach, not braking.
  std::size_t next_commit = first;
  if (n >= 5) {
    const double reach = t_.back() - params_.comfort.u_turn_window - 1e-9;
    for (std::size_t c = n - 4; c > first; --c) {
      if (t_[c] < reach &&
          kin_.accel_long[c] > -params_.comfort.emergency_decel) {
        next_commit = c;
        break;
      }
    }
  }

  const std::size_t tail = n - first;
  std::vector<double> loss(tail);
  for (std::size_t k = 0; k < tail; ++k) loss[k] = u_turn_loss_[first + k];
  EmergencyStopDetector stop = stop_at_commit_;
  EmergencyStopDetector snapshot = stop_at_commit_;
  auto apply = [&](const std::optional<MotionEvent>& e) {
    if (!e) return;
    for (std::size_t k = std::max(e->first, first); k <= e->last; ++k) {
      loss[k - first] += e->penalty;
    }
  };
  for (std::size_t k = first; k < n; ++k) {
    if (k == next_commit) snapshot = stop;
    apply(stop.Push(k, t_[k], kin_.accel_long[k]));
  }
  apply(stop.Finish());

  std::vector<TermVector> values(tail);
  for (std::size_t k = 0; k < tail; ++k) {
    const std::size_t idx = first + k;
    const double speed = kin_.speed[idx];
    values[k][0] = RiskAt(idx, speed);
    values[k][1] =
        InstantaneousEfficiency(speed, road_.SpeedLimit(section_[idx]));
    values[k][2] = InstantaneousComfort(
        kin_.yaw_rate[idx], speed,
        std::hypot(kin_.jerk_long[idx], kin_.jerk_lat[idx]), loss[k],
        params_.comfort);
    values[k][3] = ComputePowerBreakdown(EgoAt(idx), params_.vehicle, road_).total;
  }

  TermVector integral = committed_integral_;
  TermVector tail_integral{};
  for (std::size_t k = 1; k < tail; ++k) {
    const double dt = t_[first + k] - t_[first + k - 1];
    for (std::size_t term = 0; term < kNumTerms; ++term) {
      tail_integral[term] += 0.5 * (values[k][term] + values[k - 1][term]) * dt;
    }
    if (first + k == next_commit) {
      for (std::size_t term = 0; term < kNumTerms; ++term) {
        committed_integral_[term] += tail_integral[term];
      }
    }
  }
  for (std::size_t term = 0; term < kNumTerms; ++term) {
    integral[term] += tail_integral[term];
  }
  if (next_commit > first) {
    committed_ = next_commit;
    stop_at_commit_ = snapshot;
  }

  const double duration = t_.back() - t_.front();
  TermVector mean;
  for (std::size_t term = 0; term < kNumTerms; ++term) {
    mean[term] = integral[term] / duration;
  }
  EvaluationReport r = ScoreTerms(TermScores::FromArray(mean), crash_, model_);
  r.case_id = stream_id_;
  r.frames = n;
  r.duration = duration;
  return r;
}

}  // namespace s2o
