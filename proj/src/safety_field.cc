#include "s2o/safety_field.h"

#include <algorithm>
#include <cmath>

#include "s2o/errors.h"
#include "s2o/geometry.h"
#include "s2o/quadrature.h"

namespace s2o {

void DsfParams::Validate() const {
  if (!(G > 0.0)) throw ValidationError("dsf.G must be positive");
  if (!(k1 >= 0.0)) throw ValidationError("dsf.k1 must be non-negative");
  if (!(a >= 0.0)) throw ValidationError("dsf.a must be non-negative");
  if (!(b > 0.0)) throw ValidationError("dsf.b must be positive");
  if (!(c > 0.0)) throw ValidationError("dsf.c must be positive");
  if (!(min_distance > 0.0)) {
    throw ValidationError("dsf.min_distance must be positive");
  }
  roi.Validate();
}

double VirtualMass(const AgentState& agent, const DsfParams& p) {
  const double v = std::max(0.0, agent.v_long);
  return agent.mass * (p.a * std::pow(v, p.b) + p.c);
}

namespace {

double RawEquivalentDistance(const AgentState& ego, const AgentState& agent) {
  const LocalOffset r = ToLocal(ego, agent.x, agent.y);
  const double k_a = agent.length / agent.width;
  return std::sqrt(r.longitudinal * r.longitudinal +
                   k_a * r.lateral * r.lateral);
}

}  // namespace

double EquivalentDistance(const AgentState& ego, const AgentState& agent) {
  const double d = RawEquivalentDistance(ego, agent);
  if (!(d > 0.0)) throw DomainError("degenerate distance");
  return d;
}

double ClosingSpeed(const AgentState& ego, const AgentState& agent) {
  const double dx = agent.x - ego.x;
  const double dy = agent.y - ego.y;
  const double norm = std::hypot(dx, dy);
  if (norm == 0.0) return 0.0;
  const double rvx = ego.speed * std::cos(ego.heading) -
                     agent.speed * std::cos(agent.heading);
  const double rvy = ego.speed * std::sin(ego.heading) -
                     agent.speed * std::sin(agent.heading);
  return (rvx * dx + rvy * dy) / norm;
}

double FieldRisk(double m_eq, double r_eq, double closing, const DsfParams& p) {
  const double r2 = r_eq * r_eq;
  return p.G * m_eq / r2 +
         p.k1 * std::exp(std::min(closing, p.max_exponent)) / r2;
}

RiskSample AgentRisk(const AgentState& ego, const AgentState& agent,
                     const DsfParams& p) {
  RiskSample s;
  s.agent_id = agent.id;
  s.r_eq = EquivalentDistance(ego, agent);
  s.m_eq = VirtualMass(agent, p);
  s.risk = FieldRisk(s.m_eq, s.r_eq, ClosingSpeed(ego, agent), p);
  return s;
}

double EgoRisk(const SceneFrame& frame, const DsfParams& p) {
  double total = 0.0;
  for (const AgentState& agent : frame.agents) {
    if (!InRoi(frame.ego, agent, p.roi)) continue;
    const double r_eq =
        std::max(p.min_distance, RawEquivalentDistance(frame.ego, agent));
    total += FieldRisk(VirtualMass(agent, p), r_eq,
                       ClosingSpeed(frame.ego, agent), p);
  }
  return total;
}

std::vector<double> RiskSeries(const DrivingCase& c, const DsfParams& p) {
  std::vector<double> risk;
  risk.reserve(c.frames.size());
  for (const SceneFrame& f : c.frames) risk.push_back(EgoRisk(f, p));
  return risk;
}

double SafetyScore(const DrivingCase& c, const DsfParams& p) {
  if (c.frames.size() < 2) throw ValidationError("fewer than 2 frames");
  std::vector<double> t;
  t.reserve(c.frames.size());
  for (const SceneFrame& f : c.frames) t.push_back(f.t);
  return TrapezoidMean(t, RiskSeries(c, p));
}

GridSpec GridSpec::AroundEgo(const EgoState& ego, double half_extent,
                             double cell_size) {
  GridSpec g;
  const auto cells =
      static_cast<std::size_t>(std::ceil(2.0 * half_extent / cell_size));
  g.rows = g.cols = std::max<std::size_t>(cells, 1);
  g.cell_size = cell_size;
  const double span = static_cast<double>(g.cols) * cell_size;
  g.origin_x = ego.x - 0.5 * span;
  g.origin_y = ego.y - 0.5 * span;
  return g;
}

RiskGrid RiskHeatmap(const SceneFrame& frame, const DsfParams& p,
                     const GridSpec& spec) {
  if (!(spec.cell_size > 0.0)) {
    throw ValidationError("grid cell size must be positive");
  }
  RiskGrid grid;
  grid.origin_x = spec.origin_x;
  grid.origin_y = spec.origin_y;
  grid.cell_size = spec.cell_size;
  grid.rows = spec.rows;
  grid.cols = spec.cols;
  grid.values.assign(spec.rows * spec.cols, 0.0);

  // Per-agent terms that do not depend on the probe position.
  std::vector<double> m_eq;
  m_eq.reserve(frame.agents.size());
  for (const AgentState& a : frame.agents) m_eq.push_back(VirtualMass(a, p));

  AgentState probe = frame.ego;
  for (std::size_t r = 0; r < grid.rows; ++r) {
    probe.y = grid.CenterY(r);
    for (std::size_t c = 0; c < grid.cols; ++c) {
      probe.x = grid.CenterX(c);
      double total = 0.0;
      for (std::size_t k = 0; k < frame.agents.size(); ++k) {
        const AgentState& agent = frame.agents[k];
        if (!InRoi(probe, agent, p.roi)) continue;
        const LocalOffset off = ToLocal(probe, agent.x, agent.y);
        const double k_a = agent.length / agent.width;
        const double r_eq = std::max(
            spec.min_distance,
            std::sqrt(off.longitudinal * off.longitudinal +
                      k_a * off.lateral * off.lateral));
        total += FieldRisk(m_eq[k], r_eq, ClosingSpeed(probe, agent), p);
      }
      grid.values[r * grid.cols + c] = total;
    }
  }
  return grid;
}

}  // namespace s2o
