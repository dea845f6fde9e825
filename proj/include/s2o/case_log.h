#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "s2o/trajectory.h"

namespace s2o {

// Case logs are JSON Lines. The optional first line is a header:
//
//   {"schema":"s2o.case/1","scenario":"...","driver":"...","crash":false,
//    "road":{"speed_limits_kmh":{"urban_road":60,...},"gradient":0.0,
//            "rolling_coeff":0.015}}
//
// followed by one frame per line:
//
//   {"t":0.0,
//    "ego":{"x":..,"y":..,"heading":..,"speed":..,"length":..,"width":..,
//           "mass":..,"section":"urban_road"},
//    "agents":[{"id":"a1","kind":"car","x":..,"y":..,"heading":..,
//               "speed":..,"length":..,"width":..,"mass":..}]}
//
// Blank lines and lines starting with '#' are skipped. Ego "speed" may be
// omitted, in which case it is derived from positions. Agent "mass" may be
// omitted and defaults per kind.
inline constexpr std::string_view kCaseSchema = "s2o.case/1";

struct CaseParseOptions {
  // Frames are resampled to a uniform grid when any gap deviates from the
  // median gap by more than this fraction.
  double resample_tolerance = 0.10;
  // When positive, always resample to this period.
  double quadrature_dt = 0.0;
  double default_ego_mass = 1500.0;
  RoadContext default_road;
};

DrivingCase ParseCase(std::istream& in, const CaseParseOptions& options = {});
DrivingCase ParseCaseString(std::string_view text,
                            const CaseParseOptions& options = {});
DrivingCase ParseCaseFile(const std::string& path,
                          const CaseParseOptions& options = {});

// Header and frame decoding, shared with the streaming reader. Line numbers
// are only used for error messages.
bool IsCaseHeaderLine(std::string_view line);
void ParseCaseHeader(std::string_view line, std::size_t line_no,
                     DrivingCase* into);
SceneFrame ParseFrameLine(std::string_view line, std::size_t line_no,
                          double default_ego_mass = 1500.0);

void WriteCase(const DrivingCase& c, std::ostream& out);
std::string WriteCaseString(const DrivingCase& c);
std::string FrameToLine(const SceneFrame& frame);

// Median gap between consecutive timestamps.
double MedianTimeStep(const DrivingCase& c);

// Linear interpolation onto a uniform grid of period close to `dt` spanning
// exactly [t_s, t_f]. Agents are matched by id.
DrivingCase ResampleUniform(const DrivingCase& c, double dt);

}  // namespace s2o
