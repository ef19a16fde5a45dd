#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "unitroot/error.hpp"
#include "unitroot/invariants.hpp"
#include "unitroot/job.hpp"

using namespace unitroot;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config;
  std::string route;
  std::optional<int> precision, degmax, lmax;
  std::string wmax;
  std::string cache_dir;
  std::string json_out;
  bool override_guard = false;
  bool serial = false;
};

void add_common(CLI::App* sub, Overrides& o, bool need_config) {
  auto* c = sub->add_option("--config", o.config, "JSON job config");
  if (need_config) c->required();
  sub->add_option("--route", o.route, "a|b|c|oracle|all");
  sub->add_option("--precision", o.precision, "p-adic precision N");
  sub->add_option("--wmax", o.wmax, "weight truncation, an integer or a/b");
  sub->add_option("--degmax", o.degmax, "Route A truncation degree");
  sub->add_option("--lmax", o.lmax, "largest oracle extension degree");
  sub->add_option("--cache-dir", o.cache_dir, "directory for cached B_mu tables");
  sub->add_option("--json", o.json_out, "write the JSON report here ('-' for stdout)");
  sub->add_flag("--override-enumeration-guard", o.override_guard, "allow oracle enumerations past the guard");
  sub->add_flag("--serial", o.serial, "use the serial kernels");
}

void apply(const Overrides& o, JobConfig& c) {
  if (!o.route.empty()) c.routes = parse_routes(o.route);
  if (o.precision) {
    if (*o.precision < 1) throw Error(ErrorKind::ConfigInvalid, "--precision must be >= 1");
    c.precision = *o.precision;
  }
  if (!o.wmax.empty()) c.wmax = parse_rational(o.wmax);
  if (o.degmax) c.degmax = *o.degmax;
  if (o.lmax) c.lmax = *o.lmax;
  if (!o.cache_dir.empty()) c.cache_dir = o.cache_dir;
  if (o.override_guard) c.override_guard = true;
  if (o.serial) c.parallel = false;
}

JobConfig configured(const Overrides& o) {
  JobConfig c = load_config(o.config);
  apply(o, c);
  return c;
}

void emit(const Overrides& o, const json& j) {
  if (o.json_out.empty()) return;
  if (o.json_out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(o.json_out);
  if (!out) throw Error(ErrorKind::ConfigInvalid, "cannot write '" + o.json_out + "'");
  out << j.dump(2) << "\n";
}

bool quiet(const Overrides& o) { return o.json_out == "-"; }

std::string str(const json& v) {
  std::ostringstream os;
  os << v["num"].get<std::int64_t>();
  if (v["den"].get<std::int64_t>() != 1) os << "/" << v["den"].get<std::int64_t>();
  return (v.value("at_least", false) ? ">=" : "") + os.str();
}

std::string digits(const json& elem) {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : elem["digits"]) {
    os << (first ? "" : " ");
    first = false;
    if (d.size() == 1) {
      os << d[0].get<std::int64_t>();
    } else {
      os << "(";
      for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k].get<std::int64_t>();
      os << ")";
    }
  }
  return os.str();
}

void print_summary(const json& rep) {
  const auto& routes = rep["routes"];
  for (const char* r : {"A", "B", "C"}) {
    if (!routes.contains(r)) continue;
    const auto& e = routes[r];
    std::cout << "route " << r << ": ";
    if (e.contains("error")) {
      std::cout << e["error"]["message"].get<std::string>() << "\n";
      continue;
    }
    std::cout << digits(e["unit_root"]);
    if (std::string(r) == "A") std::cout << "  [degmax " << e["degmax"] << "]";
    if (std::string(r) == "B") std::cout << "  [" << e["cycles"] << "/" << e["budget"] << " cycles]";
    if (std::string(r) == "C") std::cout << "  [K " << e["K"] << ", basis " << e["truncation"]["basis_size"] << "]";
    std::cout << "\n";
  }
  if (routes.contains("oracle")) {
    const auto& o = routes["oracle"];
    if (o.contains("error")) {
      std::cout << "oracle: " << o["error"]["message"].get<std::string>() << "\n";
    } else {
      std::cout << "oracle successive ords:";
      for (const auto& v : o["successive"]) std::cout << " " << str(v);
      std::cout << "\n";
      if (o.contains("versus_consensus")) {
        std::cout << "oracle vs consensus:";
        for (const auto& v : o["versus_consensus"]) std::cout << " " << str(v);
        std::cout << "\n";
      }
    }
  }
  if (rep.contains("agreement")) std::cout << "agreement: " << str(rep["agreement"]) << "\n";
  std::cout << "verdict: " << rep["verdict"].get<std::string>() << "\n";
}

int cmd_unit_root(const Overrides& o, bool oracle_only) {
  JobConfig c = configured(o);
  if (oracle_only) c.routes = {Route::Oracle};
  const auto res = run(c);
  if (!quiet(o)) print_summary(res.report);
  emit(o, res.report);
  return res.exit_code();
}

int cmd_weights(const Overrides& o) {
  const json j = weights_report(configured(o));
  if (!quiet(o)) {
    const auto& w = j["weights"];
    std::cout << "D = " << w["D"] << ", M0 rank " << w["lineality_rank"] << ", " << w["facet_forms"].size() << " facets\n";
    for (const auto& f : w["facet_forms"]) {
      std::cout << "  l =";
      for (const auto& x : f) std::cout << " " << str(x);
      std::cout << "\n";
    }
    std::cout << j["monomials"]["count"] << " monomials with w <= " << str(j["monomials"]["wmax"]) << "\n";
  }
  emit(o, j);
  return 0;
}

int cmd_lfunction(const Overrides& o) {
  const json j = lfunction_report(configured(o));
  if (!quiet(o)) {
    std::cout << "Fredholm degree " << j["truncation"]["K"] << ", basis " << j["truncation"]["basis_size"] << "\n";
    std::cout << "Newton polygon:";
    for (const auto& s : j["newton_polygon"]) std::cout << " (slope " << str(s["slope"]) << ", length " << s["length"] << ")";
    std::cout << "\n";
    if (j["delta"].contains("error"))
      std::cout << "delta: " << j["delta"]["error"]["message"].get<std::string>() << "\n";
    else
      std::cout << "delta unit root: " << digits(j["delta"]["unit_root"]) << "\n";
  }
  emit(o, j);
  return j["delta"].contains("error") ? 1 : 0;
}

int cmd_check(const Overrides& o) {
  json all = json::array();
  bool ok = true;
  for (JobConfig c : standard_battery(o.precision.value_or(4))) {
    apply(o, c);
    const auto res = run(c);
    ok = ok && res.agree;
    const auto& rep = res.report;
    if (!quiet(o)) {
      std::cout << (res.agree ? "ok   " : "FAIL ") << c.name;
      if (rep.contains("agreement")) std::cout << "  agreement " << str(rep["agreement"]);
      if (rep["routes"].contains("oracle") && rep["routes"]["oracle"].contains("versus_consensus")) {
        std::cout << "  oracle";
        for (const auto& v : rep["routes"]["oracle"]["versus_consensus"]) std::cout << " " << str(v);
      }
      std::cout << "  " << rep["runtime"]["timing_us"]["total"].get<std::int64_t>() / 1000 << " ms\n";
    }
    all.push_back(rep);
  }
  emit(o, {{"schema_version", kReportSchemaVersion}, {"battery", all}});
  return ok ? 0 : 1;
}

int cmd_selftest(const Overrides& o) {
  json all = json::array();
  bool ok = true;
  for (const auto& r : selftest()) {
    ok = ok && r.pass;
    if (!quiet(o)) std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  emit(o, {{"schema_version", kReportSchemaVersion}, {"selftest", all}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic unit roots of toric exponential sums"};
  app.require_subcommand(1);
  Overrides o;
  auto* unit = app.add_subcommand("unit-root", "unit root by Routes A, B, C");
  auto* oracle = app.add_subcommand("oracle", "brute-force S_l table and u_l estimates");
  auto* weights = app.add_subcommand("weights", "polytope and weight report");
  auto* lfun = app.add_subcommand("lfunction", "Fredholm polynomial, Newton polygon and L data");
  auto* check = app.add_subcommand("check", "cross-validation battery");
  auto* self = app.add_subcommand("selftest", "invariant suites");
  for (auto* s : {unit, oracle, weights, lfun}) add_common(s, o, true);
  for (auto* s : {check, self}) add_common(s, o, false);
  CLI11_PARSE(app, argc, argv);
  try {
    if (unit->parsed()) return cmd_unit_root(o, false);
    if (oracle->parsed()) return cmd_unit_root(o, true);
    if (weights->parsed()) return cmd_weights(o);
    if (lfun->parsed()) return cmd_lfunction(o);
    if (check->parsed()) return cmd_check(o);
    if (self->parsed()) return cmd_selftest(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!o.json_out.empty()) {
      try {
        emit(o, {{"schema_version", kReportSchemaVersion},
                 {"error", {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}}}});
      } catch (const std::exception&) {
      }
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
