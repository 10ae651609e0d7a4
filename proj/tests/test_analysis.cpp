// SPDX-FileCopyrightText: © 2026 The telulab Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "support.hpp"
#include "telu/analysis.hpp"
#include "telu/error.hpp"
#include "telu/tables.hpp"

using namespace telu;
using doctest::Approx;

namespace {

constexpr double kPi2Over12 = std::numbers::pi * std::numbers::pi / 12.0;

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no telu::Error thrown");
  return ErrorCode::InvalidArgument;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("near-linearity integrals") {
  struct Row {
    ActivationId id;
    double l1, l2;
  };
  // 25-digit quadrature oracle.
  const Row rows[] = {{ActivationId::TeLU, 0.0272669031448, 0.000776435365758},
                      {ActivationId::SiLU, 0.822467033424, 0.158151287891},
                      {ActivationId::GELU, 0.25, 0.0308825271227},
                      {ActivationId::Mish, 0.240738334663, 0.023776313875},
                      {ActivationId::Logish, 0.428944832711, 0.0436032771815},
                      {ActivationId::Smish, 0.288745049393, 0.0201029788294}};
  for (const auto& r : rows) {
    CAPTURE(name(r.id));
    const auto row = near_linearity(r.id);
    REQUIRE(row.l1.converged());
    REQUIRE(row.l2.converged());
    CHECK(std::abs(row.l1.value - r.l1) < 1e-8);
    CHECK(std::abs(row.l2.value - r.l2) < 1e-8);
    CHECK(row.slope == metadata(r.id).asymptotic_slope);
  }
  const auto relu = near_linearity(ActivationId::ReLU);
  CHECK(relu.l1.value == 0.0);
  CHECK(relu.l2.value == 0.0);
  CHECK(std::abs(near_linearity(ActivationId::SiLU).l1.value - kPi2Over12) < 1e-9);
}

TEST_CASE("ReLU proximity examples") {
  const auto telu = relu_proximity(ActivationId::TeLU);
  CHECK(std::abs(telu.neg.value - 0.967407975623) < 1e-8);
  CHECK(std::abs(telu.pos.value - 0.0272669031448) < 1e-8);

  const auto elu = relu_proximity(ActivationId::ELU);
  CHECK(elu.neg.status == IntegralStatus::Divergent);
  CHECK(elu.pos.converged());
  CHECK(std::abs(elu.pos.value) < 1e-9);

  const auto gelu = relu_proximity(ActivationId::GELU);
  CHECK(std::abs(gelu.neg.value - 0.25) < 1e-8);
  CHECK(std::abs(gelu.pos.value - 0.25) < 1e-8);

  CHECK(std::abs(relu_proximity(ActivationId::Mish).neg.value - 0.883628960103) < 1e-8);
  CHECK(std::abs(relu_proximity(ActivationId::Logish).neg.value - 0.766740686597) < 1e-8);
  CHECK(std::abs(relu_proximity(ActivationId::Smish).neg.value - 0.759609222936) < 1e-8);
  CHECK(std::abs(relu_proximity(ActivationId::Softplus).neg.value - kPi2Over12) < 1e-8);
}

TEST_CASE("proximity divergence pattern") {
  for (auto id : kLinearUnits) {
    CAPTURE(name(id));
    const auto row = relu_proximity(id);
    const bool neg_div = id == ActivationId::LReLU || id == ActivationId::ELU;
    CHECK((row.neg.status == IntegralStatus::Divergent) == neg_div);
    // Logish and Smish have slopes below 1, so |ReLU - f| grows linearly.
    if (id == ActivationId::Logish || id == ActivationId::Smish) {
      CHECK(row.pos.status == IntegralStatus::Divergent);
    }
  }
  // ln(1 + e^x) - x = ln(1 + e^-x) is integrable on [0, inf): the positive side
  // converges to pi^2/12.
  const auto softplus = relu_proximity(ActivationId::Softplus);
  CHECK(softplus.pos.converged());
  CHECK(std::abs(softplus.pos.value - kPi2Over12) < 1e-8);
}

TEST_CASE("TeLU is the closest smooth unit to ReLU on the positive side") {
  const double telu = relu_proximity(ActivationId::TeLU).pos.value;
  for (auto id : kLinearUnits) {
    if (id == ActivationId::TeLU || !metadata(id).smooth) continue;
    const auto row = relu_proximity(id);
    if (!row.pos.converged()) continue;
    CAPTURE(name(id));
    CHECK(telu < row.pos.value);
  }
}

TEST_CASE("output bias") {
  const std::pair<ActivationId, double> oracle[] = {
      {ActivationId::TeLU, 0.262131725039},   {ActivationId::ReLU, 0.398942280401},
      {ActivationId::LReLU, 0.394952857597},  {ActivationId::Softplus, 0.806059183347},
      {ActivationId::ELU, 0.160520572267},    {ActivationId::SiLU, 0.206620964142},
      {ActivationId::GELU, 0.282094791774},   {ActivationId::Mish, 0.240403888375},
      {ActivationId::Logish, 0.139839484663}, {ActivationId::Smish, 0.12005702266}};
  for (auto [id, v] : oracle) {
    CAPTURE(name(id));
    CHECK(std::abs(output_bias(id) - v) < 1e-8);
  }
  CHECK(std::abs(output_bias(ActivationId::ReLU) - 1.0 / std::sqrt(2.0 * std::numbers::pi)) < 1e-9);
  CHECK(std::abs(output_bias([](double x) { return x; })) < 1e-8);

  const ActivationId order[] = {ActivationId::Smish, ActivationId::Logish, ActivationId::ELU,
                                ActivationId::SiLU,  ActivationId::Mish,   ActivationId::TeLU,
                                ActivationId::GELU,  ActivationId::ReLU};
  for (std::size_t i = 0; i + 1 < std::size(order); ++i) {
    CHECK(output_bias(order[i]) < output_bias(order[i + 1]));
  }
}

TEST_CASE("output bias scales with sigma for positively homogeneous units") {
  testing::Gen g(21);
  for (int i = 0; i < 10; ++i) {
    const double s = g.uniform(0.1, 4.0);
    CHECK(output_bias(ActivationId::ReLU, s) == Approx(s / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-9));
  }
}

TEST_CASE("zero-centering") {
  CHECK(zero_centering_check());
  const auto samples = zero_centering_samples(kDefaultCenteringSigmas);
  REQUIRE(samples.size() == 3);
  CHECK(samples[1].telu_bias == Approx(0.2621).epsilon(2e-3));
  CHECK(samples[1].relu_bias == Approx(0.3989).epsilon(2e-3));
  for (const auto& s : samples) {
    CHECK(s.telu_bias > 0.0);
    CHECK(s.telu_bias < s.relu_bias);
  }
  // Identity is perfectly centred.
  CHECK(std::abs(output_bias([](double x) { return x; }, 1.0)) < output_bias(ActivationId::ReLU));
}

TEST_CASE("underflow scan in float32") {
  const auto telu = underflow_scan(ActivationId::TeLU);
  CHECK(std::abs(telu.boundary - (-103.98)) < 0.01);
  CHECK(telu.precision == Precision::F32);
  REQUIRE(telu.probes.size() == 2);
  CHECK(telu.probes[0].first == -10.0);
  CHECK(telu.probes[1].first == -100.0);
  CHECK(telu.probes[0].second == Approx(-4.08599367e-4).epsilon(1e-5));

  CHECK(underflow_scan(ActivationId::ReLU).boundary == 0.0);
  CHECK(std::abs(underflow_scan(ActivationId::GELU).boundary - (-14.42)) < 0.5);
  CHECK(code_of([] { (void)underflow_scan(ActivationId::LReLU); }) == ErrorCode::NoNullRegion);
}

TEST_CASE("shared exp-underflow boundary") {
  const double ref = underflow_scan(ActivationId::TeLU).boundary;
  for (auto id : {ActivationId::ELU, ActivationId::SiLU, ActivationId::Mish, ActivationId::Logish,
                  ActivationId::Smish, ActivationId::Softplus}) {
    CAPTURE(name(id));
    CHECK(std::abs(underflow_scan(id).boundary - ref) < 0.02);
  }
}

TEST_CASE("property: scan reports a zero run followed by a nonzero derivative") {
  for (auto id : {ActivationId::TeLU, ActivationId::ReLU, ActivationId::GELU, ActivationId::ELU}) {
    for (auto p : {Precision::F32, Precision::F64}) {
      CAPTURE(name(id));
      CAPTURE(name(p));
      ScanOptions opts;
      opts.precision = p;
      opts.lo = p == Precision::F32 ? -200.0 : -800.0;
      opts.step = 1e-3;
      const auto r = underflow_scan(id, opts);
      CHECK(r.first_nonzero > r.last_zero);
      CHECK(r.first_nonzero - r.last_zero == Approx(opts.step).epsilon(1e-6));
      CHECK(eval_derivative(id, r.last_zero, p) == 0.0);
      CHECK(eval_derivative(id, r.first_nonzero, p) != 0.0);
      CHECK(r.boundary >= r.last_zero);
      CHECK(r.boundary <= r.first_nonzero);
      testing::Gen g(static_cast<std::uint64_t>(id) * 13 + static_cast<std::uint64_t>(p));
      for (int i = 0; i < 300; ++i) {
        const double x = g.uniform(opts.lo, r.last_zero);
        REQUIRE(eval_derivative(id, x, p) == 0.0);
      }
    }
  }
}

TEST_CASE("scan rejects a bad step") {
  ScanOptions opts;
  opts.step = 0.0;
  CHECK(code_of([&] { (void)underflow_scan(ActivationId::TeLU, opts); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("decay classification") {
  const auto telu = decay_classify(ActivationId::TeLU);
  CHECK(telu.limit_kind == LimitKind::Finite);
  CHECK(telu.limit == Approx(1.0).epsilon(1e-3));
  CHECK(telu.assigned_class == DecayClass::XOverExp);

  const auto mish = decay_classify(ActivationId::Mish);
  CHECK(mish.limit == Approx(1.0).epsilon(1e-3));
  CHECK(mish.assigned_class == DecayClass::XOverExp);

  const auto elu = decay_classify(ActivationId::ELU);
  CHECK(elu.limit_kind == LimitKind::Unbounded);
  CHECK(elu.assigned_class == DecayClass::InverseExp);
  for (auto [x, ratio] : elu.ratio_samples) CHECK(ratio / x == Approx(1.0).epsilon(0.15));

  CHECK(decay_classify(ActivationId::GELU).assigned_class == DecayClass::FactorialBracket);
  for (auto id : {ActivationId::SiLU, ActivationId::Logish, ActivationId::Smish}) {
    CAPTURE(name(id));
    CHECK(decay_classify(id).assigned_class == DecayClass::XOverExp);
  }
  // Softplus' = sigmoid decays like e^-x, so the ratio grows like x - 1.
  CHECK(decay_classify(ActivationId::Softplus).assigned_class == DecayClass::InverseExp);
  CHECK(decay_classify(ActivationId::LReLU).assigned_class == DecayClass::None);
  CHECK(decay_classify(ActivationId::ReLU).assigned_class == DecayClass::None);

  CHECK(to_string(DecayClass::XOverExp) == "Theta(x/e^x)");
  CHECK(to_string(DecayClass::InverseExp) == "Theta(1/e^x)");
}

TEST_CASE("property: finite limit near one implies the x/e^x class") {
  for (auto id : kLinearUnits) {
    const auto r = decay_classify(id);
    if (r.limit_kind == LimitKind::Finite && std::abs(r.limit - 1.0) < kDecayAgreementTol) {
      CAPTURE(name(id));
      CHECK(r.assigned_class == DecayClass::XOverExp);
    }
  }
}

TEST_CASE("TeLU over Mish derivative ratio") {
  auto ratio = [](double x) {
    return eval_derivative(ActivationId::TeLU, -x) / eval_derivative(ActivationId::Mish, -x);
  };
  // x = 1 lies between the two derivative roots, so the ratio dips below one there.
  for (double x : {0.5, 1.5, 2.0, 3.0, 5.0, 10.0}) CHECK(ratio(x) > 1.0);
  CHECK(ratio(1.0) == Approx(0.5044666881).epsilon(1e-9));
  CHECK(ratio(20.0) == Approx(1.0).epsilon(1e-8));
  CHECK(ratio(3.0) > ratio(5.0));
  CHECK(ratio(5.0) > ratio(10.0));
}

TEST_CASE("isolated derivative zero") {
  CHECK(find_derivative_root() == Approx(-1.0788600584646).epsilon(1e-9));
  CHECK(find_derivative_root(ActivationId::SiLU, -2.0, -1.0) == Approx(-1.2784645427611).epsilon(1e-9));
  CHECK(code_of([] { (void)find_derivative_root(ActivationId::ReLU); }) == ErrorCode::NoSignChange);
  CHECK(code_of([] { (void)find_derivative_root(ActivationId::TeLU, 0.0, 1.0); }) == ErrorCode::NoSignChange);
}

TEST_CASE("derivative supremum") {
  const auto relu = derivative_supremum(ActivationId::ReLU);
  CHECK(relu.value == 1.0);

  const auto telu = derivative_supremum(ActivationId::TeLU);
  CHECK(telu.value > 1.0);
  CHECK(telu.value < 1.10);
  CHECK(telu.value == Approx(1.0619753087179).epsilon(1e-10));
  CHECK(telu.x == Approx(0.6965639604).epsilon(1e-6));

  CHECK(derivative_supremum(ActivationId::SiLU).value == Approx(1.0998393201289).epsilon(1e-10));
  CHECK(derivative_supremum(ActivationId::Mish).value == Approx(1.0884981612517).epsilon(1e-10));
  const auto gelu = derivative_supremum(ActivationId::GELU);
  CHECK(gelu.x == Approx(std::numbers::sqrt2).epsilon(1e-6));
  CHECK(gelu.value == Approx(1.1289041451852).epsilon(1e-10));
}

TEST_CASE("tables: CSV layout") {
  const ActivationId ids[] = {ActivationId::TeLU, ActivationId::ReLU};
  const auto csv = render_tables(ids, TableFormat::Csv);
  const auto lines = lines_of(csv);
  CHECK(std::find(lines.begin(), lines.end(), "id,L1,L2,slope") != lines.end());
  CHECK(std::find(lines.begin(), lines.end(), "id,neg,pos") != lines.end());

  // Two data rows per section.
  int sections = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].rfind("# ", 0) != 0) continue;
    ++sections;
    REQUIRE(i + 3 < lines.size() + 1);
    CHECK(lines[i + 2].rfind("TeLU,", 0) == 0);
    CHECK(lines[i + 3].rfind("ReLU,", 0) == 0);
    CHECK((i + 4 == lines.size() || lines[i + 4].empty()));
  }
  CHECK(sections == 5);
  CHECK(csv.find("TeLU,0.0272669,0.000776435,1") != std::string::npos);
}

TEST_CASE("tables: divergent entries render as inf") {
  const ActivationId ids[] = {ActivationId::LReLU};
  const auto csv = render_tables(ids, TableFormat::Csv);
  CHECK(csv.find("LReLU,inf,0") != std::string::npos);

  const auto doc = nlohmann::json::parse(render_tables(ids, TableFormat::Json));
  const auto& row = doc["relu_proximity"][0];
  CHECK(row["id"] == "LReLU");
  CHECK(row["neg"]["status"] == "divergent");
  CHECK(row["neg"]["value"] == "inf");
  CHECK(row["pos"]["status"] == "converged");
  CHECK(doc["null_domain"][0]["boundary"].is_null());
}

TEST_CASE("tables: JSON round-trips and records thresholds") {
  const ActivationId ids[] = {ActivationId::TeLU, ActivationId::GELU};
  const auto text = render_tables(ids, TableFormat::Json);
  const auto doc = nlohmann::json::parse(text);
  CHECK(nlohmann::json::parse(doc.dump()) == doc);
  CHECK(doc["meta"]["decay_agreement_tol"] == kDecayAgreementTol);
  CHECK(doc["meta"]["decay_growth_factor"] == kDecayGrowthFactor);
  CHECK(doc["near_linearity"].size() == 2);
  CHECK(doc["decay"][1]["class"] == "O(1/x!);Omega(1/(x^2)!)");
}

TEST_CASE("tables: filter validation") {
  CHECK(code_of([] { (void)compute_tables({}); }) == ErrorCode::InvalidFilter);
  const ActivationId tanh_only[] = {ActivationId::Tanh};
  CHECK(code_of([&] { (void)compute_tables(tanh_only); }) == ErrorCode::InvalidFilter);
}

TEST_CASE("tables are deterministic") {
  CHECK(render_tables(kLinearUnits, TableFormat::Csv) == render_tables(kLinearUnits, TableFormat::Csv));
}
