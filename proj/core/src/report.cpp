#include "edlab/report.hpp"

#include <cmath>
#include <sstream>

#include "edlab/errors.hpp"

namespace edlab {

ConvergenceReport convergence_report(const std::vector<double>& errors) {
  std::vector<double> h(errors.size());
  double v = 1.0;
  for (std::size_t i = 0; i < h.size(); ++i, v /= 2.0) h[i] = v;
  return convergence_report(errors, h);
}

ConvergenceReport convergence_report(const std::vector<double>& errors,
                                     const std::vector<double>& h) {
  if (errors.size() < 2 || errors.size() != h.size())
    throw Error("convergence_report: need >= 2 matched (error, h) levels");
  ConvergenceReport r;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (errors[i] <= 0.0 || errors[i + 1] <= 0.0)
      throw Error("convergence_report: errors must be positive");
    if (errors[i + 1] >= errors[i]) r.monotone = false;
    r.pair_orders.push_back(std::log(errors[i] / errors[i + 1]) /
                            std::log(h[i] / h[i + 1]));
  }
  double sum = 0.0;
  for (double o : r.pair_orders) sum += o;
  r.mean_order = sum / r.pair_orders.size();
  return r;
}

std::string format_report(const ConvergenceReport& r) {
  std::ostringstream os;
  os << "orders:";
  for (double o : r.pair_orders) os << " " << o;
  os << " mean=" << r.mean_order << (r.monotone ? "" : " [non-monotone]");
  return os.str();
}

}  // namespace edlab
