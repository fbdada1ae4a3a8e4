#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rtm/trajectory.hpp"

namespace rtm {

/// Shortest decimal form that round-trips a double exactly.
std::string format_full(double v);

/// Header `k,lambda,u,d,x,closed_form_lambda`, one row per sample, LF line
/// endings, values at full round-trip precision. The last column is left
/// empty when no closed form is supplied (`closed_form` null or shorter than
/// the trajectory).
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t,
                          const std::vector<double>* closed_form);

struct TrajectoryCsv {
  Trajectory trajectory;
  std::vector<double> closed_form;  // empty when the column was blank
  bool has_closed_form = false;
};

TrajectoryCsv read_trajectory_csv(const std::filesystem::path& path);

}  // namespace rtm
