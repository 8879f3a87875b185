#include <doctest.h>

#include "ticnn/ops.hpp"
#include "ticnn/optimizer.hpp"

#include <random>

using namespace ticnn;

TEST_CASE("softmax of equal scores is uniform") {
  Tensor s = Tensor::from_values({2}, {0.0f, 0.0f});
  Tensor p = class_probabilities(s);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("softmax survives extreme scores without overflow") {
  Tensor s = Tensor::from_values({2}, {1000.0f, 0.0f});
  Tensor p = class_probabilities(s);
  CHECK(p.all_finite());
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("softmax matches extended-precision exponential-ratio oracle") {
  Rng rng(1);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = dist(rng), b = dist(rng);
    Tensor s = Tensor::from_values({2}, {static_cast<float>(a), static_cast<float>(b)});
    Tensor p = class_probabilities(s);
    const long double ea = expl(static_cast<long double>(s[0]));
    const long double eb = expl(static_cast<long double>(s[1]));
    CHECK(std::abs(p[0] - static_cast<double>(ea / (ea + eb))) <= 1e-6);
    CHECK(std::abs(p[1] - static_cast<double>(eb / (ea + eb))) <= 1e-6);
  }
}

TEST_CASE("softmax rows sum to one and shift invariance holds") {
  Rng rng(2);
  std::uniform_real_distribution<float> dist(-8.0f, 8.0f);
  for (int trial = 0; trial < 200; ++trial) {
    Tensor s({1, 4});
    for (Eigen::Index i = 0; i < 4; ++i) s[i] = dist(rng);
    Tensor p = softmax_rows(s);
    CHECK(std::abs(p.data().sum() - 1.0f) <= 1e-6f);
    CHECK(p.data().minCoeff() > 0.0f);
    CHECK(p.data().maxCoeff() < 1.0f);
    Tensor shifted = s;
    shifted.data().array() += 3.25f;
    Tensor ps = softmax_rows(shifted);
    CHECK((p.data() - ps.data()).cwiseAbs().maxCoeff() <= 1e-6f);
  }
}

TEST_CASE("nll of uniform scores is ln 2") {
  Tensor s = Tensor::from_values({2}, {0.0f, 0.0f});
  CHECK(nll_loss(s, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("nll of a confidently correct score is near zero") {
  Tensor s = Tensor::from_values({2}, {10.0f, -10.0f});
  CHECK(nll_loss(s, 0) >= 0.0f);
  CHECK(nll_loss(s, 0) <= 1e-6f);
}

TEST_CASE("nll equals -log of the class probability") {
  Rng rng(3);
  std::uniform_real_distribution<float> dist(-6.0f, 6.0f);
  for (int trial = 0; trial < 300; ++trial) {
    Tensor s({3});
    for (Eigen::Index i = 0; i < 3; ++i) s[i] = dist(rng);
    const Eigen::Index tag = trial % 3;
    const float loss = nll_loss(s, tag);
    CHECK(loss >= 0.0f);
    CHECK(std::abs(loss + std::log(class_probabilities(s)[tag])) <= 1e-5f);
  }
}

TEST_CASE("batch nll gradient is softmax minus one-hot over batch size") {
  Tensor s = Tensor::from_values({2, 2}, {1.0f, -1.0f, 0.5f, 0.5f});
  Tensor ds;
  nll_loss_batch(s, {0, 1}, &ds);
  Tensor p = softmax_rows(s);
  CHECK(ds[0] == doctest::Approx((p[0] - 1.0f) / 2.0f));
  CHECK(ds[1] == doctest::Approx(p[1] / 2.0f));
  CHECK(ds[2] == doctest::Approx(p[2] / 2.0f));
  CHECK(ds[3] == doctest::Approx((p[3] - 1.0f) / 2.0f));
}

TEST_CASE("rmsprop leaves parameters unchanged on zero gradient") {
  Tensor theta = Tensor::from_values({3}, {1.0f, -2.0f, 0.5f});
  std::vector<NamedParam<float>> params{{"theta", &theta, true}};
  RmsProp<float> opt(0.01f);
  const VecX<float> before = theta.data();
  for (int i = 0; i < 5; ++i) opt.step(params);
  CHECK((theta.data() - before).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("rmsprop step magnitude converges to the learning rate under constant gradient") {
  // Scalar recurrence: v_t -> g^2, so step -> eta * g/(|g|+eps) ~ eta.
  TensorT<double> theta({1});
  theta[0] = 0.0;
  std::vector<NamedParam<double>> params{{"theta", &theta, true}};
  const double eta = 0.01, g = 0.37;
  RmsProp<double> opt(eta);
  double prev = theta[0], step = 0.0;
  for (int i = 0; i < 500; ++i) {
    theta.grad()[0] = g;
    opt.step(params);
    step = prev - theta[0];
    prev = theta[0];
  }
  CHECK(step == doctest::Approx(eta).epsilon(1e-3));
}

TEST_CASE("rmsprop descends a quadratic bowl monotonically") {
  TensorT<double> theta({1});
  theta[0] = 3.0;
  std::vector<NamedParam<double>> params{{"theta", &theta, true}};
  RmsProp<double> opt(0.01);
  double prev_loss = theta[0] * theta[0];
  for (int i = 0; i < 100; ++i) {
    theta.grad()[0] = 2.0 * theta[0];
    opt.step(params);
    const double loss = theta[0] * theta[0];
    CHECK(loss < prev_loss);
    prev_loss = loss;
  }
}
