#include <doctest.h>

#include <set>
#include <stdexcept>

#include <json.hpp>

#include "cheb/errors.hpp"
#include "cheb/verify.hpp"

using namespace cheb;

namespace {

SuiteOptions single(int k, int m) {
  SuiteOptions o;
  o.k_min = o.k_max = k;
  o.m_min = o.m_max = m;
  return o;
}

const CheckResult& find(const VerificationReport& r, const std::string& id) {
  for (const CheckResult& c : r.results)
    if (c.lemma_id == id) return c;
  throw std::logic_error("missing check " + id);
}

}  // namespace

TEST_CASE("multiplier at 0 is exactly zero for (1,1)") {
  const ChebyshevMap map = build_map(1, 1);
  CHECK(map.multiplier_at_zero() == 0.0);
  const VerificationReport r = run_suite(single(1, 1));
  const CheckResult& c = find(r, "c");
  CHECK(c.passed);
  CHECK(c.detail.find("mult(0)=0 ") != std::string::npos);
  CHECK(find(r, "j").passed);
}

TEST_CASE("k = 1 factorization check for (1,3)") {
  const VerificationReport r = run_suite(single(1, 3));
  const CheckResult& c = find(r, "k");
  CHECK(c.passed);
  CHECK(c.k == 1);
  CHECK(c.m == 3);
  CHECK(c.anchor.find("m(m+1)^2(2m+1)") != std::string::npos);
}

TEST_CASE("check set depends on (k, m)") {
  const auto ids = [](const VerificationReport& r) {
    std::string s;
    for (const CheckResult& c : r.results) s += c.lemma_id;
    return s;
  };
  CHECK(ids(run_suite(single(1, 1))) == "abcdefghijk");
  CHECK(ids(run_suite(single(2, 2))) == "abcdefghij");
  CHECK(ids(run_suite(single(1, 2))) == "abcdefghjk");
  CHECK(ids(run_suite(single(3, 2))) == "abcdefghj");
}

TEST_CASE("immediate basin split") {
  for (auto [k, m] : {std::pair{1, 1}, std::pair{6, 4}, std::pair{2, 2}}) {
    CAPTURE(k);
    CAPTURE(m);
    const ChebyshevMap map = build_map(k, m);
    const BasinRaster raster = render(map, Window(-1, 2, -1.5, 1.5, 400, 400));
    const BasinSplit split = immediate_basin_split(map, raster);
    CHECK(split.count0 == 2);
    CHECK(split.count1 == 2);
  }
}

TEST_CASE("immediate basin split needs every critical point in the window") {
  const ChebyshevMap map = build_map(1, 3);
  // The conjugate pair sits at 0.5 +- 0.134i.
  const BasinRaster raster = render(map, Window(-0.5, 1.5, -0.1, 0.1, 40, 8));
  CHECK_THROWS_AS(immediate_basin_split(map, raster), CoverageError);
  const BasinRaster right = render(map, Window(0.5, 1.5, -1, 1, 20, 20));
  CHECK_THROWS_AS(immediate_basin_split(map, right), CoverageError);
}

TEST_CASE("run_suite rejects bad ranges") {
  SuiteOptions o;
  o.k_min = 0;
  CHECK_THROWS_AS(run_suite(o), std::invalid_argument);
  o = {};
  o.m_max = 0;
  CHECK_THROWS_AS(run_suite(o), std::invalid_argument);
  o = {};
  o.basin_resolutions.clear();
  CHECK_THROWS_AS(run_suite(o), std::invalid_argument);
}

TEST_CASE("report is deterministic and self-describing") {
  SuiteOptions o;
  o.k_max = 2;
  o.m_max = 3;
  o.seed = 11;
  const std::string a = report_to_json(run_suite(o));
  const std::string b = report_to_json(run_suite(o));
  CHECK(a == b);

  const auto doc = nlohmann::json::parse(a);
  CHECK(doc["seed"] == 11);
  CHECK(doc["grid"]["k"] == nlohmann::json::array({1, 2}));
  CHECK(doc["grid"]["m"] == nlohmann::json::array({1, 3}));
  CHECK(doc["tolerances"]["boundary"] == 1e-10);
  CHECK(doc["passed"] == true);
  REQUIRE(doc["results"].size() > 0);
  std::set<std::string> anchors_for_a;
  int prev_key = 0;
  for (const auto& r : doc["results"]) {
    CHECK(r.contains("anchor"));
    CHECK(!r.contains("witness"));
    const int key = r["params"]["k"].get<int>() * 100 + r["params"]["m"].get<int>();
    CHECK(key >= prev_key);
    prev_key = key;
    if (r["lemma_id"] == "a") anchors_for_a.insert(r["anchor"].get<std::string>());
  }
  CHECK(anchors_for_a.size() == 1);
}

TEST_CASE("a different seed changes samples but not verdicts") {
  SuiteOptions o = single(6, 4);
  const VerificationReport a = run_suite(o);
  o.seed = 8;
  const VerificationReport b = run_suite(o);
  CHECK(a.all_passed());
  CHECK(b.all_passed());
}

TEST_CASE("failures carry a witness") {
  SuiteOptions o = single(2, 2);
  o.boundary_tol = 1e-30;
  const VerificationReport r = run_suite(o);
  CHECK(!r.all_passed());
  for (const CheckResult& c : r.results)
    if (!c.passed) CHECK(c.witness.has_value());
}

TEST_CASE("full 1..6 grid passes") {
  const VerificationReport r = run_suite();
  for (const CheckResult& c : r.results) {
    CAPTURE(c.k);
    CAPTURE(c.m);
    CAPTURE(c.lemma_id);
    CAPTURE(c.witness.value_or(""));
    CHECK(c.passed);
  }
  CHECK(r.results.size() == 336);
}
