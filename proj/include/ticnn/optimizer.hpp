#pragma once

#include "ticnn/layers.hpp"

namespace ticnn {

/// RMSprop: v <- rho*v + (1-rho)*g^2, theta <- theta - eta * g / (sqrt(v) + eps).
template <typename S>
class RmsProp {
 public:
  explicit RmsProp(S learning_rate = S(0.001), S decay = S(0.9), S eps = S(1e-8))
      : eta_(learning_rate), rho_(decay), eps_(eps) {}

  void step(std::vector<NamedParam<S>>& params) {
    if (state_.empty()) {
      for (auto& p : params)
        if (p.trainable) state_.emplace_back(VecX<S>::Zero(p.tensor->size()));
    }
    std::size_t si = 0;
    for (auto& p : params) {
      if (!p.trainable) continue;
      VecX<S>& v = state_[si++];
      const auto& g = p.tensor->grad();
      v = rho_ * v + (S(1) - rho_) * g.array().square().matrix();
      p.tensor->data() -= (eta_ * g.array() / (v.array().sqrt() + eps_)).matrix();
    }
  }

  S learning_rate() const { return eta_; }

 private:
  S eta_, rho_, eps_;
  std::vector<VecX<S>> state_;
};

template <typename S>
inline void zero_grads(std::vector<NamedParam<S>>& params) {
  for (auto& p : params) p.tensor->zero_grad();
}

}  // namespace ticnn
