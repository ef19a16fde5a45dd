#include "unitroot/job.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "unitroot/error.hpp"
#include "unitroot/hyperg.hpp"
#include "unitroot/kernels.hpp"
#include "unitroot/oracle.hpp"

namespace unitroot {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0).count();
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); }

std::int64_t get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) invalid("'" + key + "' must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> get_int_list(const json& j, const std::string& key) {
  if (!j.is_array()) invalid("'" + key + "' must be a list of integers");
  std::vector<std::int64_t> out;
  for (const auto& x : j) out.push_back(get_int(x, key));
  return out;
}

std::vector<std::vector<std::int64_t>> get_int_matrix(const json& j, const std::string& key) {
  if (!j.is_array()) invalid("'" + key + "' must be a list of integer lists");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& x : j) out.push_back(get_int_list(x, key));
  return out;
}

Rational get_rational(const json& j, const std::string& key) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den")) {
    const auto den = get_int(j["den"], key);
    if (den == 0) invalid("'" + key + "' has zero denominator");
    return Rational(get_int(j["num"], key), den);
  }
  invalid("'" + key + "' must be an integer, \"a/b\" or {num, den}");
}

json elem_raw(const RingElem& x) { return json(std::vector<std::int64_t>(x.data().begin(), x.data().end())); }

RingElem elem_from_raw(const json& j, const RingSpec& R) {
  RingElem x(R);
  if (!j.is_array() || j.size() != R.stride()) throw std::runtime_error("cache entry has wrong shape");
  for (std::size_t k = 0; k < R.stride(); ++k) x.data()[k] = j[k].get<std::int64_t>();
  return x;
}

json error_json(const Error& e) { return {{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}}; }

json digit_diff(const RingElem& a, const RingElem& b) {
  const auto da = a.pi_adic_digits(), db = b.pi_adic_digits();
  json out = json::array();
  for (std::size_t k = 0; k < da.size(); ++k)
    if (da[k] != db[k]) out.push_back({{"index", k}, {"left", da[k]}, {"right", db[k]}});
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct SetupOutcome {
  std::unique_ptr<DworkSetup> setup;
  json cache;
};

SetupOutcome make_setup(const JobConfig& c, const LaurentSpec& spec, const RingSpec& R) {
  SetupOutcome out;
  out.cache = {{"enabled", c.cache_dir.has_value()}};
  if (!c.cache_dir) {
    out.setup = std::make_unique<DworkSetup>(spec, R, c.wmax, c.parallel);
    return out;
  }
  const auto W = build_weight_data(spec.A);
  const Rational wmax = c.wmax.value_or(default_wmax(spec.p, R.precision(), W.D));
  const std::string key = cache_key(spec, R.precision(), wmax);
  const auto path = (std::filesystem::path(*c.cache_dir) / (key + ".json")).string();
  auto cached = load_cached_tables(path, R);
  out.setup = std::make_unique<DworkSetup>(spec, R, wmax, c.parallel, cached ? &*cached : nullptr);
  out.cache["key"] = key;
  out.cache["hit"] = out.setup->used_cache();
  if (!out.setup->used_cache()) {
    std::filesystem::create_directories(*c.cache_dir);
    save_cached_tables(path, out.setup->export_tables());
  }
  return out;
}

}  // namespace

std::string route_name(Route r) {
  switch (r) {
    case Route::A: return "A";
    case Route::B: return "B";
    case Route::C: return "C";
    case Route::Oracle: return "oracle";
  }
  return "?";
}

std::set<Route> parse_routes(const std::string& s) {
  std::string t;
  for (char ch : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (t == "a") return {Route::A};
  if (t == "b") return {Route::B};
  if (t == "c") return {Route::C};
  if (t == "oracle") return {Route::Oracle};
  if (t == "all") return {Route::A, Route::B, Route::C, Route::Oracle};
  invalid("unknown route '" + s + "'");
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const std::int64_t v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(v);
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    std::size_t ua = 0, ub = 0;
    const std::int64_t num = std::stoll(a, &ua), den = std::stoll(b, &ub);
    if (ua != a.size() || ub != b.size() || den == 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    invalid("not a rational: '" + s + "'");
  }
}

JobConfig parse_config(const json& j) {
  if (!j.is_object()) invalid("config must be an object");
  static const std::set<std::string> known{"name",  "p",     "epsilon", "field_degree", "field_poly", "n",
                                           "A",     "coeffs", "precision", "routes",     "degmax",     "wmax",
                                           "lmax",  "output", "cache_dir", "override_enumeration_guard", "parallel"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) invalid("unknown key '" + k + "'");
  for (const char* k : {"p", "A", "coeffs"})
    if (!j.contains(k)) invalid(std::string("missing key '") + k + "'");
  JobConfig c;
  if (j.contains("name")) {
    if (!j["name"].is_string()) invalid("'name' must be a string");
    c.name = j["name"].get<std::string>();
  }
  c.p = get_int(j["p"], "p");
  if (j.contains("epsilon")) c.epsilon = static_cast<int>(get_int(j["epsilon"], "epsilon"));
  if (j.contains("field_degree")) c.m = static_cast<int>(get_int(j["field_degree"], "field_degree"));
  if (j.contains("field_poly")) c.field_poly = get_int_list(j["field_poly"], "field_poly");
  c.A = get_int_matrix(j["A"], "A");
  if (c.A.empty()) invalid("'A' must be nonempty");
  c.n = j.contains("n") ? static_cast<int>(get_int(j["n"], "n")) : static_cast<int>(c.A.front().size());
  c.coeffs = get_int_matrix(j["coeffs"], "coeffs");
  if (j.contains("precision")) c.precision = static_cast<int>(get_int(j["precision"], "precision"));
  if (c.precision < 1) invalid("'precision' must be >= 1");
  if (j.contains("routes")) {
    if (!j["routes"].is_array()) invalid("'routes' must be a list");
    c.routes.clear();
    for (const auto& r : j["routes"]) {
      if (!r.is_string()) invalid("'routes' entries must be strings");
      for (Route x : parse_routes(r.get<std::string>())) c.routes.insert(x);
    }
  }
  if (j.contains("degmax") && !j["degmax"].is_null()) {
    c.degmax = static_cast<int>(get_int(j["degmax"], "degmax"));
    if (*c.degmax < 1) invalid("'degmax' must be >= 1");
  }
  if (j.contains("wmax") && !j["wmax"].is_null()) c.wmax = get_rational(j["wmax"], "wmax");
  if (j.contains("lmax")) c.lmax = static_cast<int>(get_int(j["lmax"], "lmax"));
  if (c.lmax < 2) invalid("'lmax' must be >= 2");
  for (const char* k : {"output", "cache_dir"}) {
    if (!j.contains(k) || j[k].is_null()) continue;
    if (!j[k].is_string()) invalid(std::string("'") + k + "' must be a string");
    (std::string(k) == "output" ? c.output : c.cache_dir) = j[k].get<std::string>();
  }
  for (const char* k : {"override_enumeration_guard", "parallel"}) {
    if (!j.contains(k)) continue;
    if (!j[k].is_boolean()) invalid(std::string("'") + k + "' must be true or false");
    (std::string(k) == "parallel" ? c.parallel : c.override_guard) = j[k].get<bool>();
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    invalid("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json config_json(const JobConfig& c) {
  json j{{"name", c.name},     {"p", c.p},           {"epsilon", c.epsilon}, {"field_degree", c.m},
         {"n", c.n},           {"A", c.A},           {"coeffs", c.coeffs},   {"precision", c.precision},
         {"lmax", c.lmax}, {"override_enumeration_guard", c.override_guard}};
  json routes = json::array();
  for (Route r : c.routes) routes.push_back(route_name(r));
  j["routes"] = routes;
  if (c.field_poly) j["field_poly"] = *c.field_poly;
  if (c.degmax) j["degmax"] = *c.degmax;
  if (c.wmax) j["wmax"] = rational_json(*c.wmax);
  return j;
}

LaurentSpec job_spec(const JobConfig& c) {
  return make_laurent_spec(c.p, c.m, c.field_poly, c.epsilon, ExponentSet(c.n, c.A), c.coeffs);
}

json rational_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json val_json(const RationalVal& v) {
  return {{"num", v.value.numerator()}, {"den", v.value.denominator()}, {"at_least", v.capped}};
}

json ring_elem_json(const RingElem& x) {
  const RingSpec& R = x.ring();
  json coeffs = json::array();
  for (int j = 0; j < R.pi_degree(); ++j) {
    std::vector<std::int64_t> row;
    for (int k = 0; k < R.degree(); ++k) row.push_back(x.coeff(j, k));
    coeffs.push_back(row);
  }
  return {{"digits", x.pi_adic_digits()}, {"coefficients", coeffs}};
}

json radix_json(const RingSpec& R) {
  return {{"p", R.p()},
          {"m", R.degree()},
          {"defining_polynomial", R.residue_polynomial()},
          {"precision", R.precision()},
          {"pi_relation", "pi^(p-1) = -p"},
          {"digits", R.precision() * R.pi_degree()},
          {"digit_layout", "x = sum_k d_k pi^k, d_k a t-coefficient vector over [0, p)"},
          {"coefficient_layout", "x = sum_j c_j pi^j, c_j a t-coefficient vector mod p^N"}};
}

json weights_json(const WeightData& W) {
  json forms = json::array();
  for (const auto& l : W.facet_forms) {
    json f = json::array();
    for (const auto& x : l) f.push_back(rational_json(x));
    forms.push_back(f);
  }
  return {{"n", W.n()},
          {"A", W.A.vectors},
          {"D", W.D},
          {"facet_forms", forms},
          {"scaled_forms", W.scaled_forms},
          {"cone_inequalities", W.cone_inequalities},
          {"lineality_rank", W.lineality_basis.size()},
          {"lineality_basis", W.lineality_basis}};
}

json polygon_json(const NewtonPolygon& P) {
  json out = json::array();
  for (const auto& s : P) out.push_back({{"slope", rational_json(s.slope)}, {"length", s.length}});
  return out;
}

std::string cache_key(const LaurentSpec& spec, int N, const Rational& wmax) {
  json coeffs = json::array();
  for (const auto& c : spec.coeffs) coeffs.push_back(c);
  const json material{{"p", spec.p},         {"m", spec.m},   {"field_poly", spec.field_poly},
                      {"epsilon", spec.epsilon}, {"N", N},    {"A", spec.A.vectors},
                      {"coeffs", coeffs},    {"wmax", rational_json(wmax)}};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(material.dump())));
  return buf;
}

std::optional<BigFTables> load_cached_tables(const std::string& path, const RingSpec& R) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const json j = json::parse(in);
    BigFTables t;
    for (const auto& b : j.at("splitting")) t.splitting.b.push_back(elem_from_raw(b, R));
    for (const auto& tab : j.at("tables")) {
      std::map<Point, RingElem> m;
      for (const auto& e : tab) m.emplace(e.at("mu").get<Point>(), elem_from_raw(e.at("value"), R));
      t.tables.push_back(std::move(m));
    }
    return t;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void save_cached_tables(const std::string& path, const BigFTables& t) {
  json j;
  j["splitting"] = json::array();
  for (const auto& b : t.splitting.b) j["splitting"].push_back(elem_raw(b));
  j["tables"] = json::array();
  for (const auto& tab : t.tables) {
    json arr = json::array();
    for (const auto& [mu, v] : tab) arr.push_back({{"mu", mu}, {"value", elem_raw(v)}});
    j["tables"].push_back(arr);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, path);
}

JobResult run(const JobConfig& c) {
  const auto t_total = Clock::now();
  const LaurentSpec spec = job_spec(c);
  const RingSpec R = ring_for(spec, c.precision);
  const int N = c.precision;

  JobResult res;
  json& rep = res.report;
  json timing;
  rep["schema_version"] = kReportSchemaVersion;
  rep["config"] = config_json(c);
  rep["radix"] = radix_json(R);

  auto t0 = Clock::now();
  const WeightData W = build_weight_data(spec.A);
  rep["weights"] = weights_json(W);
  timing["weights"] = micros_since(t0);
  rep["orbit"] = {{"degree", orbit_degree(spec)}, {"cycle_length", cycle_length(spec)}, {"field_poly", spec.field_poly}};

  json routes = json::object();
  std::vector<std::pair<std::string, RingElem>> values;
  bool failed = false;
  json cache_info{{"enabled", c.cache_dir.has_value()}};

  if (c.routes.count(Route::A)) {
    t0 = Clock::now();
    try {
      const auto a = unit_root_route_A_stable(spec, c.degmax, R);
      routes["A"] = {{"unit_root", ring_elem_json(a.u)},
                     {"degmax", a.degmax},
                     {"tried", a.tried},
                     {"stability", val_json(a.stability)},
                     {"policy", c.degmax ? "explicit: degmax vs 2 degmax" : "auto: d vs 2^j d up to p d"},
                     {"verdict", "stable"}};
      values.emplace_back("A", a.u);
    } catch (const Error& e) {
      routes["A"] = {{"error", error_json(e)}, {"verdict", "unstable"}};
      failed = true;
    }
    timing["A"] = micros_since(t0);
  }

  if (c.routes.count(Route::B) || c.routes.count(Route::C)) {
    t0 = Clock::now();
    auto so = make_setup(c, spec, R);
    cache_info = so.cache;
    const DworkSetup& S = *so.setup;
    timing["setup"] = micros_since(t0);
    const json trunc{{"wmax", rational_json(S.wmax())}, {"basis_size", S.basis().size()}, {"splitting_cut", S.cut()}};
    if (c.routes.count(Route::B)) {
      t0 = Clock::now();
      try {
        const auto b = power_iteration_unit_root(S);
        json diffs = json::array();
        bool strict = true;
        for (std::size_t k = 0; k < b.differences.size(); ++k) {
          diffs.push_back(val_json(b.differences[k]));
          if (k > 0 && !b.differences[k].capped && !(b.differences[k].value > b.differences[k - 1].value))
            strict = false;
        }
        bool in_m0 = true;
        for (const auto& [mu, v] : b.eigenvector.coeffs)
          if (!v.is_zero() && !in_lineality(W, mu)) in_m0 = false;
        routes["B"] = {{"unit_root", ring_elem_json(b.u)},
                       {"cycles", b.cycles},
                       {"budget", b.budget},
                       {"differences", diffs},
                       {"strictly_increasing", strict},
                       {"eigenvector_support", b.eigenvector.coeffs.size()},
                       {"eigenvector_in_M0", in_m0},
                       {"truncation", trunc}};
        values.emplace_back("B", b.u);
      } catch (const Error& e) {
        routes["B"] = {{"error", error_json(e)}, {"truncation", trunc}};
        failed = true;
      }
      timing["B"] = micros_since(t0);
    }
    if (c.routes.count(Route::C)) {
      t0 = Clock::now();
      const std::size_t K = fredholm_truncation(S);
      json entry{{"K", K}, {"truncation", trunc}};
      try {
        const auto fr = fredholm_unit_root(frobenius_matrix(S), K, c.parallel);
        json P = json::array();
        for (const auto& x : fr.P) P.push_back(ring_elem_json(x));
        entry["unit_root"] = ring_elem_json(fr.u);
        entry["fredholm"] = P;
        entry["newton_polygon"] = polygon_json(fr.polygon);
        values.emplace_back("C", fr.u);
      } catch (const Error& e) {
        entry["error"] = error_json(e);
        failed = true;
      }
      routes["C"] = entry;
      timing["C"] = micros_since(t0);
    }
  }

  if (!values.empty()) {
    RationalVal worst = RationalVal::at_least(Rational(N));
    json diffs = json::array();
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        const auto ag = agreement(values[i].second, values[j].second);
        worst = min(worst, ag);
        if (!ag.capped)
          diffs.push_back({{"routes", {values[i].first, values[j].first}},
                           {"agreement", val_json(ag)},
                           {"digits", digit_diff(values[i].second, values[j].second)}});
      }
    if (values.size() >= 2) rep["agreement"] = val_json(worst);
    if (!diffs.empty()) {
      failed = true;
      rep["diff"] = diffs;
      rep["error"] = {{"kind", std::string(error_kind_name(ErrorKind::RouteDisagreement))}};
    }
    if (!failed) {
      res.consensus = values.front().second;
      rep["consensus"] = ring_elem_json(*res.consensus);
    }
  }

  if (c.routes.count(Route::Oracle)) {
    t0 = Clock::now();
    OracleOptions opts;
    opts.override_guard = c.override_guard;
    opts.parallel = c.parallel;
    try {
      const auto table = char_sum_table(spec, c.lmax, opts);
      const auto est = embed_and_estimate(table, R);
      json rows = json::array(), S = json::array(), u = json::array(), succ = json::array();
      for (const auto& row : table.rows)
        rows.push_back({{"l", row.l},
                        {"field_degree", row.field_degree},
                        {"field_order", row.field_order},
                        {"counts", row.counts},
                        {"cyclotomic", cyclotomic_coefficients(row)}});
      for (const auto& x : est.S) S.push_back(ring_elem_json(x));
      for (const auto& x : est.u) u.push_back(ring_elem_json(x));
      for (const auto& x : est.successive) succ.push_back(val_json(x));
      json o{{"lmax", c.lmax}, {"rows", rows}, {"S", S}, {"u", u}, {"successive", succ}};
      if (res.consensus) {
        json vs = json::array();
        for (const auto& x : est.u) vs.push_back(val_json(agreement(*res.consensus, x)));
        o["versus_consensus"] = vs;
      }
      routes["oracle"] = o;
    } catch (const Error& e) {
      routes["oracle"] = {{"error", error_json(e)}};
      failed = true;
    }
    timing["oracle"] = micros_since(t0);
  }

  rep["routes"] = routes;
  rep["verdict"] = failed ? "fail" : (values.empty() ? "oracle-only" : "agree");
  res.agree = !failed;
  timing["total"] = micros_since(t_total);
  rep["runtime"] = {{"timing_us", timing}, {"cache", cache_info}, {"threads", max_threads()}};

  if (c.output) {
    std::ofstream out(*c.output);
    if (!out) invalid("cannot write report '" + *c.output + "'");
    out << rep.dump(2) << "\n";
  }
  return res;
}

json mathematical_fields(const json& report) {
  json j = report;
  j.erase("runtime");
  return j;
}

json weights_report(const JobConfig& c) {
  const LaurentSpec spec = job_spec(c);
  const WeightData W = build_weight_data(spec.A);
  json j{{"schema_version", kReportSchemaVersion}, {"config", config_json(c)}, {"weights", weights_json(W)}};
  const Rational wmax = c.wmax.value_or(default_wmax(spec.p, c.precision, W.D));
  const auto mons = enumerate_weighted_monomials(W, wmax);
  json list = json::array();
  for (const auto& mu : mons)
    list.push_back({{"mu", mu}, {"weight", rational_json(weight(W, mu))}, {"in_M0", in_lineality(W, mu)}});
  j["monomials"] = {{"wmax", rational_json(wmax)}, {"count", mons.size()}, {"list", list}};
  return j;
}

json lfunction_report(const JobConfig& c) {
  const auto t0 = Clock::now();
  const LaurentSpec spec = job_spec(c);
  const RingSpec R = ring_for(spec, c.precision);
  auto so = make_setup(c, spec, R);
  const DworkSetup& S = *so.setup;
  const std::size_t K = fredholm_truncation(S);
  const auto Mx = frobenius_matrix(S);
  std::vector<RingElem> P = c.parallel ? parallel::fredholm_coefficients(Mx, K) : serial::fredholm_coefficients(Mx, K);
  json j{{"schema_version", kReportSchemaVersion},
         {"config", config_json(c)},
         {"radix", radix_json(R)},
         {"truncation", {{"wmax", rational_json(S.wmax())}, {"basis_size", S.basis().size()}, {"K", K}}}};
  json Pj = json::array();
  for (const auto& x : P) Pj.push_back(ring_elem_json(x));
  j["fredholm"] = Pj;
  j["newton_polygon"] = polygon_json(newton_polygon(P));
  try {
    const auto L = lfunction_from_fredholm(P, spec.A.n, S.cycle());
    json num = json::array(), den = json::array(), ser = json::array();
    for (const auto& x : L.numerator) num.push_back(ring_elem_json(x));
    for (const auto& x : L.denominator) den.push_back(ring_elem_json(x));
    for (const auto& x : L.series) ser.push_back(ring_elem_json(x));
    j["delta"] = {{"exponent_sign", spec.A.n % 2 == 0 ? -1 : 1},
                  {"numerator", num},
                  {"denominator", den},
                  {"series", ser},
                  {"unit_root", ring_elem_json(L.unit_root)}};
  } catch (const Error& e) {
    j["delta"] = {{"error", error_json(e)}};
  }
  j["runtime"] = {{"timing_us", {{"total", micros_since(t0)}}}, {"cache", so.cache}};
  return j;
}

std::vector<JobConfig> standard_battery(int N) {
  const std::vector<std::pair<std::string, std::vector<Point>>> sets{
      {"kloosterman", {{1}, {-1}}},
      {"ray", {{1}}},
      {"two-minus-one", {{2}, {-1}}},
      {"triangle", {{1, 0}, {0, 1}, {-1, -1}}}};
  std::vector<JobConfig> out;
  auto add = [&](std::int64_t p, int m, std::size_t set, std::vector<std::vector<std::int64_t>> coeffs) {
    JobConfig c;
    c.p = p;
    c.m = m;
    c.A = sets[set].second;
    c.n = static_cast<int>(c.A.front().size());
    c.coeffs = std::move(coeffs);
    c.precision = N;
    c.name = sets[set].first + "-p" + std::to_string(p) + (m > 1 ? "-F" + std::to_string(p) + "^" + std::to_string(m) : "");
    c.routes = {Route::A, Route::B, Route::C, Route::Oracle};
    c.override_guard = true;
    out.push_back(std::move(c));
  };
  for (std::int64_t p : {2, 3, 5})
    for (std::size_t s = 0; s < sets.size(); ++s) add(p, 1, s, std::vector<std::vector<std::int64_t>>(sets[s].second.size(), {1}));
  for (std::int64_t p : {2, 3})
    for (std::size_t s : {0, 2, 1}) {
      std::vector<std::vector<std::int64_t>> coeffs(sets[s].second.size(), {1});
      coeffs[0] = {0, 1};
      add(p, 2, s, coeffs);
    }
  add(2, 2, 3, {{0, 1}, {1}, {1}});
  for (std::int64_t p : {3, 5}) {
    JobConfig c;
    c.p = p;
    c.n = 2;
    c.A = {{0, 1}, {1, 0}, {2, -1}};
    c.coeffs = {{1}, {2}, {1}};
    c.precision = N;
    c.name = "degenerate-p" + std::to_string(p);
    c.routes = {Route::A, Route::B, Route::C, Route::Oracle};
    c.override_guard = true;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace unitroot
