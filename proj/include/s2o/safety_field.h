#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "s2o/trajectory.h"

namespace s2o {

// Constants of the driving safety field. The defaults put a 1500 kg car at
// 10 m/s and 10 m headway in the 1e-2 .. 1e-1 risk range; every value is
// overridable from the config file.
struct DsfParams {
  double G = 0.001;  // potential-term constant
  double k1 = 1.0;   // kinetic-term constant
  double a = 0.05;   // virtual-mass speed gain
  double b = 1.0;    // virtual-mass speed exponent
  double c = 1.0;    // virtual-mass floor
  RoiSpec roi;
  // exp() argument is clamped here to keep adversarial inputs finite.
  double max_exponent = 50.0;
  // Superposition floor on the equivalent distance. Only reached when boxes
  // already overlap, e.g. a log that runs on past a collision.
  double min_distance = 0.25;

  void Validate() const;
};

struct RiskSample {
  std::string agent_id;
  double r_eq = 0.0;
  double m_eq = 0.0;
  double risk = 0.0;
};

// M * (a * v_long^b + c), v_long taken in the agent's own frame and floored
// at zero.
double VirtualMass(const AgentState& agent, const DsfParams& p);

// sqrt(r_long^2 + k_a * r_lat^2) in the ego heading frame, with k_a the
// agent's length/width ratio. Throws DomainError("degenerate distance") for
// coincident positions.
double EquivalentDistance(const AgentState& ego, const AgentState& agent);

// v_r * cos(theta): the component of the ego-relative approach velocity
// along the ego->agent line. Positive while the gap is closing.
double ClosingSpeed(const AgentState& ego, const AgentState& agent);

// G * m_eq / r_eq^2 + k1 * exp(closing) / r_eq^2.
double FieldRisk(double m_eq, double r_eq, double closing, const DsfParams& p);

RiskSample AgentRisk(const AgentState& ego, const AgentState& agent,
                     const DsfParams& p);

// Superposition over the agents inside the ROI, with r_eq floored at
// p.min_distance.
double EgoRisk(const SceneFrame& frame, const DsfParams& p);

// Per-frame ego risk of a whole case.
std::vector<double> RiskSeries(const DrivingCase& c, const DsfParams& p);

// Time-averaged ego risk (trapezoidal).
double SafetyScore(const DrivingCase& c, const DsfParams& p);

// World-aligned raster. Row r covers y in origin_y + [r, r+1) * cell_size,
// column c covers x in origin_x + [c, c+1) * cell_size.
struct GridSpec {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 1.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Equivalent distances below this are raised to it, which caps the value
  // of cells that sit on an agent center.
  double min_distance = 0.25;

  static GridSpec AroundEgo(const EgoState& ego, double half_extent,
                            double cell_size);
};

struct RiskGrid {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_size = 1.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t row, std::size_t col) const {
    return values[row * cols + col];
  }
  double CenterX(std::size_t col) const {
    return origin_x + (static_cast<double>(col) + 0.5) * cell_size;
  }
  double CenterY(std::size_t row) const {
    return origin_y + (static_cast<double>(row) + 0.5) * cell_size;
  }
};

// Ego risk sampled by a probe placed at each cell center; the probe keeps
// the ego heading and velocity.
RiskGrid RiskHeatmap(const SceneFrame& frame, const DsfParams& p,
                     const GridSpec& spec);

// "# s2o.riskgrid/1", a metadata header row, then one CSV line per row.
void WriteRiskGridCsv(const RiskGrid& grid, std::ostream& out);
RiskGrid ReadRiskGridCsv(std::istream& in);

}  // namespace s2o
