#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace donorsim {

// Sampled observables along one trajectory.
struct TimeTrace {
  std::vector<double> times_us;
  std::vector<std::string> names;   // one per observable column
  std::vector<std::string> units;
  Eigen::MatrixXd values;           // samples x observables

  int samples() const { return static_cast<int>(times_us.size()); }
  int column(const std::string& name) const;  // throws if absent
};

// Observables over a 2-D parameter grid, rows in row-major axis order
// (axis1 outer, axis2 inner).
struct SweepGrid {
  std::string axis1_name, axis1_unit;
  std::string axis2_name, axis2_unit;
  std::vector<double> axis1, axis2;
  std::vector<std::string> names;
  std::vector<std::string> units;
  Eigen::MatrixXd values;  // (axis1.size()*axis2.size()) x observables

  int rows() const { return static_cast<int>(axis1.size() * axis2.size()); }
  int row(int i1, int i2) const { return i1 * static_cast<int>(axis2.size()) + i2; }
  int column(const std::string& name) const;
};

}  // namespace donorsim
