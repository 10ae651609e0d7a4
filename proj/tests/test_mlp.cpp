// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "telu/error.hpp"
#include "telu/nn/mlp.hpp"

using namespace telu;
using namespace telu::nn;

TEST_CASE("init respects bias and Xavier bound") {
  const std::size_t widths[] = {4, 3, 2};
  const auto m = init_model(widths, ActivationId::TeLU, WeightInit::XavierUniform, -10.0, 5);
  REQUIRE(m.layers.size() == 2);
  CHECK(m.layers[0].weights.size() == 12);
  CHECK(m.layers[1].weights.size() == 6);
  for (const auto& layer : m.layers) {
    for (double b : layer.bias) CHECK(b == -10.0);
  }
  const double bound = std::sqrt(6.0 / 7.0);
  for (double w : m.layers[0].weights) {
    CHECK(std::abs(w) <= bound);
  }
  CHECK(m == init_model(widths, ActivationId::TeLU, WeightInit::XavierUniform, -10.0, 5));
  CHECK_FALSE(m == init_model(widths, ActivationId::TeLU, WeightInit::XavierUniform, -10.0, 6));
}

TEST_CASE("init rejects degenerate shapes") {
  const std::size_t one[] = {4};
  const std::size_t zero[] = {4, 0, 2};
  CHECK_THROWS_AS((void)init_model(one, ActivationId::ReLU, WeightInit::HeNormal, 0.0, 1), Error);
  CHECK_THROWS_AS((void)init_model(zero, ActivationId::ReLU, WeightInit::HeNormal, 0.0, 1), Error);
}

TEST_CASE("He normal has the expected spread") {
  const std::size_t widths[] = {200, 200, 2};
  const auto m = init_model(widths, ActivationId::ReLU, WeightInit::HeNormal, 0.0, 3);
  double ss = 0.0;
  for (double w : m.layers[0].weights) ss += w * w;
  const double var = ss / static_cast<double>(m.layers[0].weights.size());
  CHECK(var == doctest::Approx(2.0 / 200.0).epsilon(0.03));
}

TEST_CASE("backward pass matches finite differences for every unit") {
  const auto batch = testing::random_batch(8, 5, 3, 17);
  const std::size_t widths[] = {5, 6, 4, 3};
  for (auto id : kLinearUnits) {
    CAPTURE(name(id));
    const auto m = init_model(widths, id, WeightInit::XavierNormal, 0.1, 23);
    CHECK(testing::max_backward_error(m, batch) < 1e-5);
  }
}

TEST_CASE("initial loss is close to log of class count") {
  const auto batch = testing::random_batch(64, 10, 10, 4);
  const std::size_t widths[] = {10, 32, 10};
  auto m = init_model(widths, ActivationId::TeLU, WeightInit::XavierUniform, 0.0, 8);
  // Shrink the output layer so logits start near zero.
  for (double& w : m.layers[1].weights) w *= 0.01;
  CHECK(std::abs(batch_loss(m, batch.x, batch.y) - std::log(10.0)) < 0.1);
}

TEST_CASE("loss_and_gradients overwrites and counts hits") {
  const auto batch = testing::random_batch(6, 3, 2, 2);
  const std::size_t widths[] = {3, 4, 2};
  const auto m = init_model(widths, ActivationId::SiLU, WeightInit::XavierUniform, 0.0, 1);
  Gradients g;
  std::size_t hits = 0;
  const double l1 = loss_and_gradients(m, batch.x, batch.y, g, &hits);
  const auto first = g.weights;
  const double l2 = loss_and_gradients(m, batch.x, batch.y, g);
  CHECK(l1 == l2);
  CHECK(g.weights == first);
  CHECK(l1 == batch_loss(m, batch.x, batch.y));

  const auto logits = forward_logits(m, batch.x, batch.y.size());
  std::size_t expected = 0;
  for (std::size_t b = 0; b < batch.y.size(); ++b) {
    const int arg = logits[b * 2 + 1] > logits[b * 2] ? 1 : 0;
    expected += arg == batch.y[b] ? 1 : 0;
  }
  CHECK(hits == expected);
  CHECK_THROWS_AS((void)batch_loss(m, {}, std::span<const int>{}), Error);
}

TEST_CASE("predict and accuracy agree with logits") {
  const auto batch = testing::random_batch(20, 3, 4, 11);
  Dataset d;
  d.n_samples = 20;
  d.n_features = 3;
  d.n_classes = 4;
  d.features = batch.x;
  d.labels = batch.y;
  d.finalize();
  const std::size_t widths[] = {3, 5, 4};
  const auto m = init_model(widths, ActivationId::GELU, WeightInit::HeUniform, 0.0, 3);
  const auto pred = predict(m, d);
  const auto logits = forward_logits(m, d.features, d.n_samples);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < d.n_samples; ++i) {
    const double* z = logits.data() + i * 4;
    for (int c = 0; c < 4; ++c) CHECK(z[pred[i]] >= z[c]);
    hits += pred[i] == d.labels[i] ? 1 : 0;
  }
  CHECK(accuracy(m, d) == static_cast<double>(hits) / 20.0);

  const std::size_t wrong[] = {2, 5, 4};
  const auto m2 = init_model(wrong, ActivationId::GELU, WeightInit::HeUniform, 0.0, 3);
  CHECK_THROWS_AS((void)predict(m2, d), Error);
}

TEST_CASE("dead ReLU network passes no gradient to hidden layers") {
  testing::Gen g(31);
  std::vector<double> x;
  for (int i = 0; i < 8 * 6; ++i) x.push_back(g.uniform(0.0, 1.0));
  const std::vector<int> y = {0, 1, 2, 0, 1, 2, 0, 1};
  const std::size_t widths[] = {6, 16, 16, 3};
  const auto m = init_model(widths, ActivationId::ReLU, WeightInit::XavierUniform, -10.0, 9);
  Gradients grads;
  (void)loss_and_gradients(m, x, y, grads);
  for (std::size_t l = 0; l + 1 < m.layers.size(); ++l) {
    for (double v : grads.weights[l]) REQUIRE(v == 0.0);
    for (double v : grads.bias[l]) REQUIRE(v == 0.0);
  }
  // The output bias still learns the class prior.
  double any = 0.0;
  for (double v : grads.bias.back()) any += std::abs(v);
  CHECK(any > 0.0);
}

TEST_CASE("property: backward check on random shapes") {
  testing::Gen g(77);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t in = 2 + g.next() % 5;
    const std::size_t hid = 2 + g.next() % 6;
    const int classes = 2 + static_cast<int>(g.next() % 4);
    const auto id = kLinearUnits[g.next() % kLinearUnits.size()];
    const std::size_t widths[] = {in, hid, static_cast<std::size_t>(classes)};
    const auto m = init_model(widths, id, WeightInit::XavierUniform, g.uniform(-0.5, 0.5), g.next());
    const auto batch = testing::random_batch(1 + g.next() % 6, in, classes, g.next());
    CAPTURE(name(id));
    CHECK(testing::max_backward_error(m, batch) < 1e-5);
  }
}
