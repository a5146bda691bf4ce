#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bayesel/errors.hpp"
#include "bayesel/models/synth.hpp"
#include "bayesel/rjmcmc.hpp"
#include "bayesel/rng.hpp"

using namespace bayesel;

namespace {

RegressionData small_problem(std::uint64_t seed) {
  Vector beta(4);
  beta << 8.0, 0.0, -6.0, 0.0;
  return synth_regression(seed, 60, 4, beta, 2.0);
}

RjmcmcConfig small_config(std::uint64_t seed) {
  RjmcmcConfig c;
  c.length = 1200;
  c.burn_in = 300;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_SUITE("rjmcmc") {

TEST_CASE("trace accounting and record invariants") {
  const RegressionData d = small_problem(81);
  const ModelTrace mt = rjmcmc(d, small_config(3));
  CHECK(mt.s == 4);
  CHECK(mt.length == 1200);
  CHECK(mt.burn_in == 300);
  CHECK(mt.seed == 3);
  REQUIRE(mt.rows.size() == 2u * 1200u);
  REQUIRE(mt.move_counts.size() == 3);
  CHECK(mt.move_counts[0].label == "within");
  CHECK(mt.move_counts[1].label == "birth");
  CHECK(mt.move_counts[2].label == "death");
  CHECK(mt.move_counts[0].proposed == 1200);
  CHECK(mt.move_counts[1].proposed + mt.move_counts[2].proposed == 1200);

  for (std::size_t i = 0; i < mt.rows.size(); ++i) {
    const ModelRecord& r = mt.rows[i];
    CHECK(r.iter == static_cast<int>(i / 2) + 1);
    CHECK((i % 2 == 0) == (r.move == ModelMove::Within));
    // gamma string uses '0'/'1' and k counts the ones.
    int ones = 0;
    for (char c : r.gamma) {
      CHECK((c == '0' || c == '1'));
      ones += c == '1';
    }
    CHECK(r.k == ones);
    CHECK(static_cast<int>(r.beta.size()) == r.k);
    CHECK(r.sigma2 > 0.0);
    CHECK(std::isfinite(r.log_post));
  }
}

TEST_CASE("chains replay by seed and depart by stream") {
  const RegressionData d = small_problem(82);
  const ModelTrace a = rjmcmc(d, small_config(5));
  const ModelTrace b = rjmcmc(d, small_config(5));
  RjmcmcConfig other = small_config(5);
  other.stream_id = 1;
  const ModelTrace c = rjmcmc(d, other);
  REQUIRE(a.rows.size() == b.rows.size());
  bool same_ab = true, same_ac = true;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    same_ab = same_ab && a.rows[i].gamma == b.rows[i].gamma &&
              a.rows[i].sigma2 == b.rows[i].sigma2 &&
              a.rows[i].beta == b.rows[i].beta;
    same_ac = same_ac && a.rows[i].gamma == c.rows[i].gamma &&
              a.rows[i].sigma2 == c.rows[i].sigma2;
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
}

TEST_CASE("visit frequencies form a distribution and expose the mode") {
  const RegressionData d = small_problem(83);
  const ModelTrace mt = rjmcmc(d, small_config(7));
  const auto freq = model_visit_frequencies(mt);
  REQUIRE_FALSE(freq.empty());
  double total = 0.0;
  double best = -1.0;
  for (const auto& [bits, f] : freq) {
    CHECK(bits.size() == 4);
    CHECK(f > 0.0);
    total += f;
    best = std::max(best, f);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(freq.at(modal_model(mt)) == doctest::Approx(best).epsilon(1e-15));

  ModelTrace empty = mt;
  empty.burn_in = empty.length;
  CHECK_THROWS_AS(model_visit_frequencies(empty), EmptyTraceError);
}

TEST_CASE("cross moves actually travel on separable data") {
  const RegressionData d = small_problem(84);
  RjmcmcConfig c = small_config(11);
  c.model_prior.kind = ModelPrior::Kind::Uniform;
  const ModelTrace mt = rjmcmc(d, c);
  const long cross_acc = mt.move_counts[1].accepted + mt.move_counts[2].accepted;
  CHECK(cross_acc > 0);
  const auto freq = model_visit_frequencies(mt);
  CHECK(freq.size() >= 2);  // at least the mode and a neighbor get visits

  const auto rep = acceptance_report(mt.move_counts);
  REQUIRE(rep.size() == 3);
  for (const auto& e : rep) {
    CHECK(e.rate >= 0.0);
    CHECK(e.rate <= 1.0);
  }
}

TEST_CASE("uniform and beta-binomial priors are both honored") {
  ModelPrior uni;
  uni.kind = ModelPrior::Kind::Uniform;
  CHECK(uni.log_prior(0, 5) == doctest::Approx(-5.0 * std::log(2.0)));
  CHECK(uni.log_prior(5, 5) == doctest::Approx(uni.log_prior(2, 5)));
  CHECK_THROWS_AS(uni.log_prior(6, 5), DimensionError);
  ModelPrior bb;  // defaults a=2, b=7
  CHECK(bb.log_prior(2, 6) ==
        doctest::Approx(log_model_prior_beta_binomial(2, 6, 2.0, 7.0)));
}

TEST_CASE("init variants and input validation") {
  const RegressionData d = small_problem(85);
  RjmcmcConfig null_cfg = small_config(13);
  null_cfg.init = RjmcmcConfig::Init::NullModel;
  null_cfg.length = 50;
  null_cfg.burn_in = 10;
  const ModelTrace nm = rjmcmc(d, null_cfg);
  CHECK(nm.rows.size() == 100);

  RegressionData tiny;
  tiny.y = Vector::Zero(5);
  tiny.x = Matrix::Zero(5, 4);
  CHECK_THROWS_AS(rjmcmc(tiny, small_config(1)), DimensionError);
  RegressionData none;
  none.y = Vector::Zero(30);
  none.x = Matrix(30, 0);
  CHECK_THROWS_AS(rjmcmc(none, small_config(1)), DimensionError);
}

TEST_CASE("null start falls back when a score column is one-signed") {
  // x1 > 0 and y ~ 2 x1, so x1 * y > 0 pointwise and the null state has no
  // feasible trial point; the chain must start saturated instead of throwing.
  RngStream rng(41);
  const int n = 50;
  RegressionData d;
  d.y = Vector(n);
  d.x = Matrix(n, 3);
  for (int i = 0; i < n; ++i) {
    d.x(i, 0) = 0.5 + std::abs(rng.normal());
    d.x(i, 1) = rng.normal();
    d.x(i, 2) = rng.normal();
    d.y[i] = 2.0 * d.x(i, 0) + 0.1 * rng.normal();
  }
  REQUIRE((d.x.col(0).array() * d.y.array()).minCoeff() > 0.0);

  RjmcmcConfig cfg = small_config(17);
  cfg.init = RjmcmcConfig::Init::NullModel;
  cfg.length = 60;
  cfg.burn_in = 0;
  const ModelTrace mt = rjmcmc(d, cfg);
  CHECK(mt.rows.size() == 120);
}

TEST_CASE("model trace csv and frequency json render") {
  const RegressionData d = small_problem(86);
  RjmcmcConfig c = small_config(17);
  c.length = 40;
  c.burn_in = 10;
  const ModelTrace mt = rjmcmc(d, c);
  const std::string path = "test_artifacts/model_trace.csv";
  std::filesystem::create_directories("test_artifacts");
  write_model_trace_csv(path, mt);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "iter,move,accepted,k,gamma_bits,sigma2,log_post,beta_json");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 80);

  const auto parsed = nlohmann::json::parse(model_frequencies_json(mt));
  REQUIRE(parsed.is_object());
  double total = 0.0;
  for (const auto& [k, v] : parsed.items()) total += v.get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

}  // TEST_SUITE
