#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "s2o/errors.h"
#include "s2o/safety_field.h"

namespace s2o {

namespace {

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void WriteRiskGridCsv(const RiskGrid& grid, std::ostream& out) {
  out << "# s2o.riskgrid/1\n";
  out << "origin_x,origin_y,cell_size,rows,cols\n";
  out << FormatNumber(grid.origin_x) << ',' << FormatNumber(grid.origin_y)
      << ',' << FormatNumber(grid.cell_size) << ',' << grid.rows << ','
      << grid.cols << '\n';
  for (std::size_t r = 0; r < grid.rows; ++r) {
    for (std::size_t c = 0; c < grid.cols; ++c) {
      if (c > 0) out << ',';
      out << FormatNumber(grid.at(r, c));
    }
    out << '\n';
  }
}

RiskGrid ReadRiskGridCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() {
    if (!std::getline(in, line)) {
      throw ParseError("unexpected end of risk grid", line_no + 1);
    }
    ++line_no;
  };
  next();
  if (line != "# s2o.riskgrid/1") throw ParseError("bad grid header", line_no);
  next();  // column names
  next();
  RiskGrid grid;
  char sep;
  std::istringstream meta(line);
  if (!(meta >> grid.origin_x >> sep >> grid.origin_y >> sep >>
        grid.cell_size >> sep >> grid.rows >> sep >> grid.cols)) {
    throw ParseError("bad grid metadata", line_no);
  }
  grid.values.reserve(grid.rows * grid.cols);
  for (std::size_t r = 0; r < grid.rows; ++r) {
    next();
    std::istringstream row(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(row, cell, ',')) {
      try {
        grid.values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("bad grid value '" + cell + "'", line_no);
      }
      ++count;
    }
    if (count != grid.cols) throw ParseError("wrong column count", line_no);
  }
  return grid;
}

}  // namespace s2o
