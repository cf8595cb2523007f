#pragma once

#include <string>
#include <vector>

namespace edlab {

struct ConvergenceReport {
  std::vector<double> pair_orders;  // log2(e_i / e_{i+1}) per adjacent pair
  double mean_order = 0.0;
  bool monotone = true;  // errors strictly decreasing
};

// Richardson order estimate from errors at h, h/2, h/4, ... (uniform
// refinement ratio 2). Needs >= 2 levels with positive errors.
ConvergenceReport convergence_report(const std::vector<double>& errors);

// variable spacings: order per pair = log(e_i/e_j)/log(h_i/h_j)
ConvergenceReport convergence_report(const std::vector<double>& errors,
                                     const std::vector<double>& h);

std::string format_report(const ConvergenceReport& r);

}  // namespace edlab
