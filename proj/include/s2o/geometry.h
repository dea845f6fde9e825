#pragma once

#include <vector>

#include "s2o/trajectory.h"

namespace s2o {

// Offset of `target` from `origin` expressed in the origin's heading frame.
struct LocalOffset {
  double longitudinal;
  double lateral;
};

LocalOffset ToLocal(const AgentState& origin, double x, double y);

// Closed interval test on the signed longitudinal offset; lateral offset is
// not restricted.
bool InRoi(const AgentState& ego, const AgentState& agent, const RoiSpec& roi);

// Agents of `frame` inside the ROI, in input order.
std::vector<AgentState> RoiFilter(const SceneFrame& frame, const RoiSpec& roi);

// Separating-axis test on oriented boxes. Touching boxes overlap.
bool BoxesOverlap(const AgentState& a, const AgentState& b);

bool FrameHasCollision(const SceneFrame& frame);

// True iff the ego box overlaps some agent box in any frame.
bool DetectCrash(const DrivingCase& c);

}  // namespace s2o
