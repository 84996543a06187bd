#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <json.hpp>

#include "sympten/random.hpp"
#include "sympten/tensor_io.hpp"

using namespace sympten;

#ifndef SYMPTEN_CONFIG_DIR
#define SYMPTEN_CONFIG_DIR "configs"
#endif

TEST_CASE("round trip is exact in both backends") {
  std::mt19937_64 rng(99);
  for (int n = 1; n <= 3; ++n) {
    SympSpace s(n);
    for (int order = 1; order <= 3; ++order) {
      auto tr = random_tensor<Rational>(s, order, rng);
      // non-integer values exercise the exact string path
      tr *= Rational(1, 3);
      auto back = tensor_from_json<Rational>(tensor_to_json(tr));
      CHECK((back - tr).is_zero());

      auto td = random_tensor<double>(s, order, rng);
      td *= 0.31;
      auto backd = tensor_from_json<double>(tensor_to_json(td));
      CHECK((backd - td).is_zero());
    }
    auto sig = random_sig_tensor<Rational>(s, {1, 2}, rng);
    auto back = tensor_from_json<Rational>(tensor_to_json(sig));
    CHECK(back.signature() == Signature{1, 2});
    CHECK((back - sig).is_zero());
  }
}

TEST_CASE("format validation") {
  CHECK_THROWS_AS(tensor_from_json<Rational>("{ nope"), std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json<Rational>(R"({"order": 3})"), std::invalid_argument);
  CHECK_THROWS_AS(tensor_from_json<Rational>(R"({"n": 9, "order": 1})"), std::invalid_argument);
  CHECK_THROWS_AS(
      tensor_from_json<Rational>(
          R"({"n": 1, "order": 3, "signature": [2, 2], "entries": []})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      tensor_from_json<Rational>(
          R"({"n": 1, "order": 2, "entries": [{"idx": [1, 5], "val": "1"}]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      tensor_from_json<Rational>(
          R"({"n": 1, "order": 2, "entries": [{"idx": [1], "val": "1"}]})"),
      std::invalid_argument);
  // declared symmetry is validated against the entries
  CHECK_THROWS_AS(
      tensor_from_json<Rational>(
          R"({"n": 1, "order": 2, "signature": [0, 2], "entries": [{"idx": [1, 2], "val": "1"}]})"),
      std::invalid_argument);
  // duplicate entries accumulate
  auto t = tensor_from_json<Rational>(
      R"({"n": 1, "order": 1, "entries": [{"idx": [2], "val": "1/2"}, {"idx": [2], "val": 1}]})");
  CHECK(t.at({1}) == Rational(3, 2));
}

TEST_CASE("decomposition JSON parts are re-readable") {
  std::mt19937_64 rng(100);
  SympSpace s(2);
  auto t = random_sig_tensor<Rational>(s, {1, 2}, rng);
  auto d = decompose_torsion(t);
  auto text = decomposition_to_json(d);
  for (const char* key : {"part_Aprime", "part_vec_sym", "part_Tprime", "part_vec_form"}) {
    auto start = text.find(std::string("\"") + key + "\"");
    REQUIRE(start != std::string::npos);
  }
  // re-read each part through the tensor path
  auto j = nlohmann::json::parse(text);
  TensorR sum(s, 3, {1, 2});
  for (const char* key : {"part_Aprime", "part_vec_sym", "part_Tprime", "part_vec_form"}) {
    auto part = tensor_from_json<Rational>(j.at(key).dump());
    sum += part;
  }
  CHECK((sum - t).is_zero());
}

TEST_CASE("shipped fixtures load and decompose as documented") {
  auto vo = load_tensor_file<Rational>(std::string(SYMPTEN_CONFIG_DIR) + "/tensor_v_omega_n2.json");
  auto d = decompose_torsion(vo);
  CHECK((d.part_vec_form - vo).is_zero());
  CHECK(d.part_Aprime.is_zero());
  CHECK(d.part_vec_sym.is_zero());
  CHECK(d.part_Tprime.is_zero());

  auto skew = load_tensor_file<Rational>(std::string(SYMPTEN_CONFIG_DIR) + "/tensor_skew_n2.json");
  auto res = unique_invariant(skew, true);
  CHECK(res.value == Rational(2));
  CHECK(*res.mixed_route == Rational(2));
}

TEST_CASE("report serializers emit valid JSON") {
  auto ex = verify_exactness(3, 2);
  auto jx = nlohmann::json::parse(exactness_report_to_json(ex));
  CHECK(jx.at("pass").get<bool>());
  CHECK(jx.at("ranks").size() == 3);

  auto cls = classify_traces(1);
  auto jc = nlohmann::json::parse(classification_report_to_json(cls));
  CHECK(jc.at("span_rank").get<std::size_t>() == 1);
  CHECK(jc.at("matchings").size() == 15);
}
