#pragma once

// Declarative jobs: config parsing, orchestration of Routes A, B, C and the
// oracle, cross-validation, the versioned JSON report and the B_mu cache.

#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unitroot/dwork.hpp"
#include "unitroot/laurent.hpp"

namespace unitroot {

inline constexpr int kReportSchemaVersion = 1;

enum class Route { A, B, C, Oracle };

std::string route_name(Route r);
/// "a", "b", "c", "oracle" (any case) or "all" for the four.
std::set<Route> parse_routes(const std::string& s);

struct JobConfig {
  std::string name;
  std::int64_t p = 0;
  int epsilon = 1;
  int m = 1;
  std::optional<FpPoly> field_poly;
  int n = 0;
  std::vector<Point> A;
  std::vector<std::vector<std::int64_t>> coeffs;
  int precision = 4;
  std::set<Route> routes{Route::A, Route::B, Route::C};
  std::optional<int> degmax;
  std::optional<Rational> wmax;
  int lmax = 6;
  std::optional<std::string> output;
  std::optional<std::string> cache_dir;
  bool override_guard = false;
  bool parallel = true;
};

/// Strict parse: unknown keys, floats and wrong types raise ConfigInvalid.
JobConfig parse_config(const nlohmann::json& j);
JobConfig load_config(const std::string& path);
nlohmann::json config_json(const JobConfig& c);

/// Validated Laurent polynomial of a config (throws NotSpanning, ConfigInvalid).
LaurentSpec job_spec(const JobConfig& c);

/// "a/b" or "a".
Rational parse_rational(const std::string& s);

nlohmann::json rational_json(const Rational& r);
nlohmann::json val_json(const RationalVal& v);
/// {"digits": pi-adic digits, "coefficients": rows of the pi^j coefficients}.
nlohmann::json ring_elem_json(const RingElem& x);
nlohmann::json radix_json(const RingSpec& ring);
nlohmann::json weights_json(const WeightData& W);
nlohmann::json polygon_json(const NewtonPolygon& P);

struct JobResult {
  nlohmann::json report;
  bool agree = true;
  std::optional<RingElem> consensus;
  int exit_code() const { return agree ? 0 : 1; }
};

/// Runs the requested routes.  Route failures (PrecisionUnstable,
/// NoConvergence, ...) are recorded in the report and count as disagreement;
/// config errors propagate.
JobResult run(const JobConfig& config);

/// The report without its "runtime" section (timings, cache hits).
nlohmann::json mathematical_fields(const nlohmann::json& report);

nlohmann::json weights_report(const JobConfig& config);
/// Fredholm polynomial, Newton polygon and the delta^n-processed L data.
nlohmann::json lfunction_report(const JobConfig& config);

/// FNV-1a over the canonical key material (p, m, field, epsilon, N, A,
/// coefficients, wmax), as 16 hex digits.
std::string cache_key(const LaurentSpec& spec, int N, const Rational& wmax);
std::optional<BigFTables> load_cached_tables(const std::string& path, const RingSpec& ring);
void save_cached_tables(const std::string& path, const BigFTables& t);

/// p in {2,3,5} x {A={1,-1}, {1}, {2,-1}, {(1,0),(0,1),(-1,-1)}} over F_p,
/// seven cases over F_{p^2} with lambda = (t, 1, ...), and the degenerate
/// A = {(0,1),(1,0),(2,-1)}, lambda = (1,2,1) for p = 3, 5.
std::vector<JobConfig> standard_battery(int N = 4);

}  // namespace unitroot
