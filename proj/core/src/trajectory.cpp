#include "rtm/trajectory.hpp"

#include <stdexcept>

namespace rtm {

std::vector<double> backlog_from_flows(const std::vector<double>& u,
                                       const std::vector<double>& d) {
  if (u.size() != d.size())
    throw std::invalid_argument("backlog_from_flows: length mismatch");
  std::vector<double> x(u.size());
  if (x.empty()) return x;
  x[0] = 0.0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) x[k + 1] = x[k] + (u[k] - d[k]);
  return x;
}

void validate(const Trajectory& t) {
  const std::size_t n = t.lambda.size();
  if (t.u.size() != n || t.d.size() != n || t.x.size() != n)
    throw std::logic_error("Trajectory: column lengths differ");
  if (n == 0) return;
  if (t.x[0] != 0.0) throw std::logic_error("Trajectory: x[0] != 0");
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (t.x[k + 1] != t.x[k] + (t.u[k] - t.d[k]))
      throw std::logic_error("Trajectory: backlog recursion violated");
}

}  // namespace rtm
