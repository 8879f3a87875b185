#pragma once

#include "ticnn/layers.hpp"

#include <functional>

namespace ticnn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  bool pass = false;
  std::string worst_param;
  Eigen::Index worst_index = -1;
};

/// Compares analytic gradients against central finite differences.
///
/// `loss_fn` must re-run the full forward pass and return the loss; it is
/// called repeatedly with perturbed parameters, so any randomness (dropout
/// masks) has to be frozen by the caller. `grad_fn` runs forward+backward and
/// leaves analytic gradients in the parameter grad buffers.
template <typename S>
GradCheckReport gradient_check(std::vector<NamedParam<S>>& params, const std::function<double()>& loss_fn,
                               const std::function<void()>& grad_fn, double tolerance, double step = 1e-3) {
  const double l0 = loss_fn();
  const double l1 = loss_fn();
  if (l0 != l1)
    throw std::runtime_error("gradient_check: loss is non-deterministic; freeze randomness (dropout masks, rng seeds)");

  grad_fn();
  GradCheckReport report;
  for (auto& p : params) {
    if (!p.trainable) continue;
    for (Eigen::Index i = 0; i < p.tensor->size(); ++i) {
      const S saved = (*p.tensor)[i];
      const double analytic = static_cast<double>(p.tensor->grad()[i]);
      auto probe = [&](double h) {
        (*p.tensor)[i] = saved + static_cast<S>(h);
        const double lp = loss_fn();
        (*p.tensor)[i] = saved - static_cast<S>(h);
        const double lm = loss_fn();
        (*p.tensor)[i] = saved;
        const double numeric = (lp - lm) / (2.0 * h);
        return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      };
      double rel = probe(step);
      // A relu/max-pool kink inside the probe interval mimics a wrong
      // gradient; shrinking the step moves the probe off the kink, while a
      // genuinely wrong analytic gradient stays wrong at every step.
      for (double h = step / 10.0; rel > tolerance && h >= step / 1000.0; h /= 10.0)
        rel = std::min(rel, probe(h));
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_param = p.name;
        report.worst_index = i;
      }
    }
  }
  report.pass = report.max_rel_error <= tolerance;
  return report;
}

}  // namespace ticnn
