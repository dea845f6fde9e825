#pragma once

#include <string>

#include "s2o/experience.h"
#include "s2o/safety_field.h"
#include "s2o/scoring.h"
#include "s2o/trajectory.h"

namespace s2o {

struct EvaluationParams {
  DsfParams dsf;
  VehicleParams vehicle;
  ComfortParams comfort;

  void Validate() const;
};

struct EvaluationReport {
  std::string case_id;
  std::size_t frames = 0;
  double duration = 0.0;
  TermScores raw;
  NormalizedScores normalized;
  SegmentLevel segment = SegmentLevel::kLow;
  bool crash = false;
  double integrated = 0.0;   // segmental linear score before the crash veto
  double final_score = 0.0;  // after the crash veto
};

// Four raw factor scores of a case whose kinematics are already derived.
TermScores ComputeTermScores(const DrivingCase& derived,
                             const EvaluationParams& params);

// normalize -> classify -> integrate -> crash revision.
EvaluationReport ScoreTerms(const TermScores& raw, bool crash,
                            const ScoringModel& model);

// Full pipeline on a raw case: kinematics, crash detection (OR-ed with the
// case's own crash flag), the four factor scores and the integrator.
EvaluationReport EvaluateCase(const DrivingCase& c,
                              const EvaluationParams& params,
                              const ScoringModel& model);

}  // namespace s2o
