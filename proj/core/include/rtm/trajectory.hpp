#pragma once

#include <cstddef>
#include <vector>

namespace rtm {

/// Aligned market time series. All four columns have the same length n and
/// the backlog column satisfies x[k+1] == x[k] + (u[k] - d[k]) bit for bit
/// (x[0] == 0), i.e. it is always produced by backlog_from_flows.
struct Trajectory {
  std::vector<double> lambda;  // price
  std::vector<double> u;       // consumption
  std::vector<double> d;       // demand
  std::vector<double> x;       // backlog diagnostic

  std::size_t size() const { return lambda.size(); }
};

/// x[0] = 0, x[k+1] = x[k] + (u[k] - d[k]). Result has the same length as u.
std::vector<double> backlog_from_flows(const std::vector<double>& u,
                                       const std::vector<double>& d);

/// Throws std::logic_error if the column lengths differ or the backlog
/// recursion is violated at any populated index.
void validate(const Trajectory& t);

}  // namespace rtm
