#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "unitroot/error.hpp"
#include "unitroot/invariants.hpp"
#include "unitroot/job.hpp"

using namespace unitroot;
using nlohmann::json;

namespace {

json kloosterman() {
  return {{"name", "kloosterman"}, {"p", 3}, {"A", {{1}, {-1}}}, {"coeffs", {{1}, {1}}}, {"precision", 4},
          {"routes", {"A", "B", "C", "oracle"}}};
}

ErrorKind kind_of(const json& j) {
  try {
    run(parse_config(j));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ConfigInvalid;
}

}  // namespace

TEST_CASE("Kloosterman job agrees on all routes") {
  const auto res = run(parse_config(kloosterman()));
  CHECK(res.exit_code() == 0);
  const auto& rep = res.report;
  CHECK(rep["schema_version"] == kReportSchemaVersion);
  CHECK(rep["agreement"]["at_least"] == true);
  CHECK(rep["agreement"]["num"] == 4);
  CHECK(rep.contains("consensus"));
  for (const char* r : {"A", "B", "C", "oracle"}) CHECK(rep["routes"].contains(r));
  CHECK(rep["routes"]["A"]["unit_root"] == rep["routes"]["C"]["unit_root"]);
  CHECK(rep["routes"]["oracle"]["rows"].size() == 6);
  CHECK(rep["routes"]["C"]["newton_polygon"][0]["slope"]["num"] == 0);
  CHECK(rep["routes"]["C"]["newton_polygon"][0]["length"] == 1);
  CHECK(rep["radix"]["digits"] == 8);
  CHECK(rep["consensus"]["digits"].size() == 8);
}

TEST_CASE("routes present iff requested") {
  auto j = kloosterman();
  j["routes"] = {"oracle"};
  const auto res = run(parse_config(j));
  CHECK(res.exit_code() == 0);
  CHECK(!res.report.contains("consensus"));
  CHECK(!res.report.contains("agreement"));
  CHECK(res.report["routes"].size() == 1);
  CHECK(res.report["routes"]["oracle"]["u"].size() == 5);
  CHECK(res.report["verdict"] == "oracle-only");

  j["routes"] = {"b"};
  const auto one = run(parse_config(j));
  CHECK(one.report.contains("consensus"));
  CHECK(!one.report.contains("agreement"));
  CHECK(one.report["routes"].size() == 1);
}

TEST_CASE("config errors") {
  json ns{{"p", 3}, {"n", 2}, {"A", {{1, 0}}}, {"coeffs", {{1}}}};
  CHECK(kind_of(ns) == ErrorKind::NotSpanning);
  auto bad = kloosterman();
  bad["colour"] = 1;
  CHECK(kind_of(bad) == ErrorKind::ConfigInvalid);
  bad = kloosterman();
  bad["precision"] = 4.0;
  CHECK(kind_of(bad) == ErrorKind::ConfigInvalid);
  bad = kloosterman();
  bad["coeffs"] = {{1}};
  CHECK(kind_of(bad) == ErrorKind::ConfigInvalid);
  bad = kloosterman();
  bad["epsilon"] = 2;
  CHECK(kind_of(bad) == ErrorKind::ConfigInvalid);
  bad = kloosterman();
  bad["p"] = 4;
  CHECK(kind_of(bad) == ErrorKind::CompositeP);
  bad = kloosterman();
  bad["routes"] = {"D"};
  CHECK(kind_of(bad) == ErrorKind::ConfigInvalid);
}

TEST_CASE("config round trip and rationals") {
  auto j = kloosterman();
  j["wmax"] = "13/2";
  j["degmax"] = 64;
  const JobConfig c = parse_config(j);
  CHECK(*c.wmax == Rational(13, 2));
  const JobConfig d = parse_config(config_json(c));
  CHECK(config_json(d) == config_json(c));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(parse_routes("ALL").size() == 4);
}

TEST_CASE("identical configs give identical reports modulo runtime") {
  auto j = kloosterman();
  j["name"] = "triangle";
  j["p"] = 2;
  j["A"] = {{1, 0}, {0, 1}, {-1, -1}};
  j["coeffs"] = {{1}, {1}, {1}};
  const auto a = run(parse_config(j)), b = run(parse_config(j));
  CHECK(mathematical_fields(a.report).dump(2) == mathematical_fields(b.report).dump(2));
  CHECK(a.report.contains("runtime"));
  CHECK(!mathematical_fields(a.report).contains("runtime"));
}

TEST_CASE("cache cold and warm runs agree") {
  const auto dir = std::filesystem::temp_directory_path() / "unitroot_test_cache";
  std::filesystem::remove_all(dir);
  auto j = kloosterman();
  j["field_degree"] = 2;
  j["coeffs"] = {{0, 1}, {1}};
  j["cache_dir"] = dir.string();
  const auto cold = run(parse_config(j));
  const auto warm = run(parse_config(j));
  CHECK(cold.report["runtime"]["cache"]["hit"] == false);
  CHECK(warm.report["runtime"]["cache"]["hit"] == true);
  CHECK(mathematical_fields(cold.report) == mathematical_fields(warm.report));
  j.erase("cache_dir");
  CHECK(mathematical_fields(run(parse_config(j)).report) == mathematical_fields(cold.report));
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache key depends on every ingredient") {
  auto spec = job_spec(parse_config(kloosterman()));
  const auto k = cache_key(spec, 4, Rational(4));
  CHECK(k.size() == 16);
  CHECK(k == cache_key(spec, 4, Rational(4)));
  CHECK(k != cache_key(spec, 5, Rational(4)));
  CHECK(k != cache_key(spec, 4, Rational(9, 2)));
  spec.coeffs[0] = spec.field().from(std::vector<std::int64_t>{2});
  CHECK(k != cache_key(spec, 4, Rational(4)));
}

TEST_CASE("disagreement carries a digit diff and a nonzero exit") {
  auto j = kloosterman();
  j["wmax"] = 0;
  j["routes"] = {"A", "C"};
  const auto res = run(parse_config(j));
  CHECK(res.exit_code() != 0);
  CHECK(res.report["error"]["kind"] == "RouteDisagreement");
  REQUIRE(res.report["diff"].size() == 1);
  CHECK(!res.report["diff"][0]["digits"].empty());
  CHECK(!res.report.contains("consensus"));
}

TEST_CASE("an unstable route A truncation fails the job") {
  auto j = kloosterman();
  j["degmax"] = 1;
  j["routes"] = {"A"};
  const auto res = run(parse_config(j));
  CHECK(res.exit_code() != 0);
  CHECK(res.report["routes"]["A"]["error"]["kind"] == "PrecisionUnstable");
}

TEST_CASE("reports never contain floats") {
  const auto res = run(parse_config(kloosterman()));
  std::function<void(const json&)> walk = [&](const json& x) {
    CHECK(!x.is_number_float());
    if (x.is_structured())
      for (const auto& y : x) walk(y);
  };
  walk(res.report);
}

TEST_CASE("battery composition") {
  const auto b = standard_battery();
  CHECK(b.size() == 21);
  int two_step = 0;
  for (const auto& c : b) two_step += cycle_length(job_spec(c)) == 2;
  CHECK(two_step >= 2);
}

TEST_CASE("selftest suites pass") {
  for (const auto& r : selftest()) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
}
