#include "sfh/trajectory.hpp"

#include <algorithm>

namespace sfh {

double AngleSchedule::at(double t) const {
  const auto it = std::upper_bound(starts.begin(), starts.end(), t);
  const std::size_t j = it == starts.begin() ? 0 : static_cast<std::size_t>(it - starts.begin()) - 1;
  return values[j];
}

std::vector<double> AngleSchedule::breakpoints(double t0, double t1) const {
  std::vector<double> out;
  for (std::size_t j = 1; j < starts.size(); ++j) {
    if (starts[j] > t0 && starts[j] < t1) out.push_back(starts[j]);
  }
  return out;
}

}  // namespace sfh
