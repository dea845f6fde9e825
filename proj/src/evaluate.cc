#include "s2o/evaluate.h"

#include "s2o/geometry.h"
#include "s2o/kinematics.h"

namespace s2o {

void EvaluationParams::Validate() const {
  dsf.Validate();
  vehicle.Validate();
  comfort.Validate();
}

TermScores ComputeTermScores(const DrivingCase& derived,
                             const EvaluationParams& params) {
  TermScores s;
  s.safety = SafetyScore(derived, params.dsf);
  s.efficiency = EfficiencyScore(derived, derived.road);
  s.comfort = ComfortScore(derived, params.comfort);
  s.energy = EnergyScore(derived, params.vehicle, derived.road);
  return s;
}

EvaluationReport ScoreTerms(const TermScores& raw, bool crash,
                            const ScoringModel& model) {
  EvaluationReport r;
  r.raw = raw;
  r.crash = crash;
  r.normalized = Normalize(raw, model.calibration);
  r.segment = ClassifySegment(r.normalized, model.svm, crash);
  r.integrated = Integrate(r.normalized, model.weights, r.segment);
  r.final_score = CrashRevision(r.integrated, crash);
  return r;
}

EvaluationReport EvaluateCase(const DrivingCase& c,
                              const EvaluationParams& params,
                              const ScoringModel& model) {
  c.Validate();
  const DrivingCase derived = DeriveKinematics(c);
  const bool crash = c.crash || DetectCrash(c);
  EvaluationReport r =
      ScoreTerms(ComputeTermScores(derived, params), crash, model);
  r.case_id = c.meta.scenario_id;
  r.frames = c.frames.size();
  r.duration = c.Duration();
  return r;
}

}  // namespace s2o
