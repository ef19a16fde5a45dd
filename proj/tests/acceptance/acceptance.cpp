// Acceptance criteria 1-10.  One PASS/FAIL line per criterion; exit status
// is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "unitroot/error.hpp"
#include "unitroot/hyperg.hpp"
#include "unitroot/invariants.hpp"
#include "unitroot/job.hpp"
#include "unitroot/oracle.hpp"

using namespace unitroot;
using nlohmann::json;

namespace {

constexpr int kPrecision = 4;
constexpr int kConsensusDigits = 4;
constexpr double kCaseSeconds = 60.0;
constexpr int kOracleLmax = 6;
constexpr int kOracleByL = 4;
constexpr int kOracleTargetOrd = 2;
constexpr int kDegenerateDigits = 3;
constexpr int kAnnihilatorDegree = 8;
constexpr int kMinRelations = 3;
constexpr int kShellDegmax = 40;
constexpr int kShellTargetOrd = 1;
constexpr int kWeightSamples = 1000;
constexpr int kDefinitionalSamples = 100;
constexpr int kMinAdjointWmax = 4;

struct Verdict {
  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> notes;
  std::string summary;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back("FAIL " + why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

RationalVal val_of(const json& j) {
  const Rational v(j["num"].get<std::int64_t>(), j["den"].get<std::int64_t>());
  return j["at_least"].get<bool>() ? RationalVal::at_least(v) : RationalVal::exact(v);
}

bool reaches(const RationalVal& v, std::int64_t k) { return v.value >= Rational(k); }

struct CaseRun {
  JobConfig config;
  json report;
  double seconds = 0;
  bool degenerate = false;
};

std::string fmt_secs(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << s << " s";
  return os.str();
}

json digits_of_int(const RingSpec& R, std::int64_t v) { return ring_elem_json(R.from_int(v))["digits"]; }

void criterion_consensus(const std::vector<CaseRun>& runs, Verdict& v) {
  int cases = 0, two_step = 0;
  double slowest = 0;
  RationalVal worst = RationalVal::at_least(Rational(kPrecision));
  for (const auto& r : runs) {
    if (r.degenerate) continue;
    ++cases;
    if (r.report["orbit"]["cycle_length"] == 2) ++two_step;
    slowest = std::max(slowest, r.seconds);
    for (const char* route : {"A", "B", "C"})
      if (!r.report["routes"].contains(route) || r.report["routes"][route].contains("error"))
        v.fail(r.config.name + ": route " + route + " missing or failed");
    if (!r.report.contains("agreement")) {
      v.fail(r.config.name + ": no agreement");
      continue;
    }
    const auto ag = val_of(r.report["agreement"]);
    worst = min(worst, ag);
    if (!reaches(ag, kConsensusDigits)) v.fail(r.config.name + ": agreement " + ag.str());
    if (r.seconds >= kCaseSeconds) v.fail(r.config.name + ": took " + fmt_secs(r.seconds));
  }
  if (two_step < 2) v.fail("fewer than two cases with orbit degree 2");
  v.summary = std::to_string(cases) + " cases (" + std::to_string(two_step) + " with d = 2), min agreement " +
              worst.str() + ", slowest " + fmt_secs(slowest);
}

void criterion_oracle(const std::vector<CaseRun>& runs, Verdict& v) {
  int cases = 0;
  for (const auto& r : runs) {
    if (r.degenerate) continue;
    ++cases;
    const auto& o = r.report["routes"]["oracle"];
    if (!o.contains("versus_consensus")) {
      v.fail(r.config.name + ": no oracle comparison");
      continue;
    }
    std::vector<RationalVal> ords;
    for (const auto& x : o["versus_consensus"]) ords.push_back(val_of(x));
    std::string seq;
    for (const auto& x : ords) seq += " " + x.str();
    bool ok = ords.size() >= 5;
    for (std::size_t l = 1; ok && l < 5; ++l)
      if (ords[l].value < ords[l - 1].value) ok = false;
    bool hit = false;
    for (std::size_t l = 0; l < static_cast<std::size_t>(kOracleByL) && l < ords.size(); ++l)
      hit |= reaches(ords[l], kOracleTargetOrd);
    if (!ok || !hit) v.fail(r.config.name + ": ord(u - u_l) =" + seq);
  }
  v.summary = std::to_string(cases) + " cases, ord(u - u_l) nondecreasing for l = 1..5 and >= " +
              std::to_string(kOracleTargetOrd) + " by l = " + std::to_string(kOracleByL);
}

void criterion_exact(const std::vector<CaseRun>& runs, Verdict& v) {
  int cases = 0;
  for (const auto& r : runs) {
    if (r.config.A != std::vector<Point>{{1}} || r.config.m != 1) continue;
    ++cases;
    const RingSpec R = ring_for(job_spec(r.config), kPrecision);
    const json one = digits_of_int(R, 1), minus_one = digits_of_int(R, -1), zero = digits_of_int(R, 0);
    for (const char* route : {"A", "B", "C"})
      if (r.report["routes"][route]["unit_root"]["digits"] != one) v.fail(r.config.name + ": route " + route + " u != 1");
    const json L = lfunction_report(r.config);
    const auto& ser = L["delta"]["series"];
    bool ok = ser.size() >= 2 && ser[0]["digits"] == one && ser[1]["digits"] == minus_one;
    for (std::size_t k = 2; ok && k < ser.size(); ++k) ok = ser[k]["digits"] == zero;
    if (!ok) v.fail(r.config.name + ": L series is not 1 - T");
    for (const auto& row : r.report["routes"]["oracle"]["rows"]) {
      const auto& c = row["cyclotomic"];
      bool minus = c[0] == -1;
      for (std::size_t k = 1; k < c.size(); ++k) minus = minus && c[k] == 0;
      if (!minus) v.fail(r.config.name + ": S_" + std::to_string(row["l"].get<int>()) + " != -1");
    }
  }
  if (cases != 3) v.fail("expected the three A = {1} cases over F_p");
  v.summary = std::to_string(cases) + " cases: u = 1 on A, B, C; L = 1 - T; S_l = -1 for l <= " +
              std::to_string(kOracleLmax);
}

void criterion_polygon(const std::vector<CaseRun>& runs, Verdict& v) {
  int cases = 0;
  for (const auto& r : runs) {
    ++cases;
    const auto& c = r.report["routes"]["C"];
    if (!c.contains("newton_polygon")) {
      v.fail(r.config.name + ": no Newton polygon");
      continue;
    }
    int zero_segments = 0;
    std::int64_t zero_length = 0;
    for (const auto& s : c["newton_polygon"])
      if (s["slope"]["num"] == 0) {
        ++zero_segments;
        zero_length += s["length"].get<std::int64_t>();
      }
    if (zero_segments != 1 || zero_length != 1) v.fail(r.config.name + ": slope-0 part is not one segment of length 1");
  }
  v.summary = std::to_string(cases) + " cases, one slope-0 segment of length 1";
}

void criterion_degenerate(const std::vector<CaseRun>& runs, Verdict& v) {
  int cases = 0;
  for (const auto& r : runs) {
    if (!r.degenerate) continue;
    ++cases;
    const LaurentSpec spec = job_spec(r.config);
    const WeightData W = build_weight_data(spec.A);
    std::vector<int> face;
    for (const auto& l : W.facet_forms) {
      std::vector<int> idx;
      for (std::size_t a = 0; a < spec.A.size(); ++a) {
        Rational s(0);
        for (int j = 0; j < spec.A.n; ++j) s += l[j] * spec.A.vectors[a][j];
        if (s == Rational(1)) idx.push_back(static_cast<int>(a));
      }
      if (idx.size() == spec.A.size()) face = idx;
    }
    if (face.empty()) {
      v.fail(r.config.name + ": no facet contains all of A");
      continue;
    }
    const auto pt = face_singular_point(spec, face);
    if (!pt) {
      v.fail(r.config.name + ": no common torus zero found, not degenerate");
    } else {
      std::ostringstream os;
      os << r.config.name << ": singular torus point (";
      for (std::size_t k = 0; k < pt->size(); ++k) os << (k ? "," : "") << (*pt)[k][0];
      os << ") on the edge through all of A";
      v.note(os.str());
    }
    if (!r.report.contains("agreement") || !reaches(val_of(r.report["agreement"]), kDegenerateDigits))
      v.fail(r.config.name + ": routes agree to fewer than " + std::to_string(kDegenerateDigits) + " digits");
    else
      v.note(r.config.name + ": agreement " + val_of(r.report["agreement"]).str());
  }
  if (cases != 2) v.fail("expected degenerate cases for p = 3, 5");
  v.summary = std::to_string(cases) + " degenerate cases confirmed by brute force, routes agree";
}

void criterion_annihilators(Verdict& v) {
  const std::vector<std::pair<std::string, ExponentSet>> sets{
      {"A={1,-1}", ExponentSet(1, {{1}, {-1}})},
      {"A={1}", ExponentSet(1, {{1}})},
      {"A={2,-1}", ExponentSet(1, {{2}, {-1}})},
      {"triangle", ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}})}};
  for (const auto& [label, A] : sets) {
    const auto res = annihilator_suite(A, kAnnihilatorDegree);
    const auto rel = test_relations(A);
    const bool zero_lattice = relation_basis(A).empty();
    if (!res.pass) v.fail(label + ": " + res.detail);
    if (!zero_lattice && static_cast<int>(rel.size()) < kMinRelations) v.fail(label + ": fewer than three relations");
    v.note(label + ": " + res.detail + (zero_lattice ? " (relation lattice is 0, l = 0 only)" : ""));
  }
  v.summary = "box and Euler residuals vanish through degree " + std::to_string(kAnnihilatorDegree);
}

void criterion_shells(Verdict& v) {
  for (std::int64_t p : {2, 3, 5}) {
    const ExponentSet K(1, {{1}, {-1}});
    const RingSpec R = make_ring(p, 1, std::nullopt, kPrecision);
    const MultiSeries F = calF_series(K, kShellDegmax, R);
    const Decomposer dec(K);
    int d0 = -1;
    bool stays = true;
    std::string seq;
    for (int d = 1; d <= kShellDegmax; ++d) {
      bool occupied = false;
      for (const auto& u : dec.solve(Point{0}, d)) occupied |= total_degree(u) == d;
      if (!occupied) continue;
      const auto o = F.shell_min_ord(d);
      seq += " " + o.str();
      if (d0 < 0 && reaches(o, kShellTargetOrd)) d0 = d;
      if (d0 >= 0 && !reaches(o, kShellTargetOrd)) stays = false;
    }
    const std::string name = "Kloosterman p=" + std::to_string(p);
    if (d0 < 0 || !stays) v.fail(name + ": shell min-ord does not stay >= 1");
    const auto spec = make_laurent_spec(p, 1, std::nullopt, 1, K, {{1}, {1}});
    const auto a = unit_root_route_A_stable(spec, std::nullopt, R);
    const bool stable = unit_root_route_A(spec, 2 * a.degmax, R) == a.u;
    if (!stable) v.fail(name + ": Route A not stable under doubling");
    v.note(name + ": d0 = " + std::to_string(d0) + ", occupied shells through " + std::to_string(kShellDegmax) + ":" + seq +
           "; degmax " + std::to_string(a.degmax) + " vs " + std::to_string(2 * a.degmax) + " identical");
  }
  v.summary = "shell min-ord >= 1 from d0 on through degree 40; Route A stable under doubling";
}

void criterion_bounds(const std::vector<CaseRun>& runs, Verdict& v) {
  std::size_t checks = 0;
  for (const auto& r : runs) {
    const LaurentSpec spec = job_spec(r.config);
    const DworkSetup S(spec, ring_for(spec, kPrecision));
    for (const auto& res : {splitting_bound_suite(S), bigF_bound_suite(S), matrix_entry_suite(S)}) {
      ++checks;
      if (!res.pass) v.fail(r.config.name + " " + res.name + ": " + res.detail);
    }
  }
  std::set<std::vector<Point>> seen;
  for (const auto& r : runs) {
    if (!seen.insert(r.config.A).second) continue;
    const auto res = weight_property_suite(ExponentSet(r.config.n, r.config.A), kWeightSamples, kDefinitionalSamples, 2024);
    ++checks;
    if (!res.pass) v.fail("weights: " + res.detail);
    v.note("weights for " + std::to_string(r.config.A.size()) + " vectors in dim " + std::to_string(r.config.n) + ": " +
           res.detail);
  }
  v.summary = std::to_string(checks) + " suites: b_i, B_mu, weighted matrix entries, weight properties";
}

void criterion_adjoint(const std::vector<CaseRun>& runs, Verdict& v) {
  std::size_t pairs = 0;
  for (const auto& r : runs) {
    const LaurentSpec spec = job_spec(r.config);
    const DworkSetup S(spec, ring_for(spec, kPrecision));
    if (S.wmax() < Rational(kMinAdjointWmax)) v.fail(r.config.name + ": wmax below 4");
    const auto rep = adjoint_check(S);
    pairs += rep.pairs;
    if (!rep.worst.capped || rep.pairs == 0) v.fail(r.config.name + ": discrepancy ord " + rep.worst.str());
  }
  v.summary = std::to_string(runs.size()) + " cases, " + std::to_string(pairs) + " interior pairs, all exact";
}

void criterion_contraction(const std::vector<CaseRun>& runs, Verdict& v) {
  int strict = 0;
  for (const auto& r : runs) {
    const auto& b = r.report["routes"]["B"];
    if (b.contains("error")) {
      v.fail(r.config.name + ": " + b["error"]["message"].get<std::string>());
      continue;
    }
    std::string seq;
    for (const auto& d : b["differences"]) seq += " " + val_of(d).str();
    if (b["cycles"].get<int>() > b["budget"].get<int>()) v.fail(r.config.name + ": over budget");
    if (!b["strictly_increasing"].get<bool>())
      v.fail(r.config.name + ": normalizer difference ords" + seq + " are not strictly increasing");
    else
      ++strict;
  }
  v.summary = std::to_string(strict) + " of " + std::to_string(runs.size()) +
              " cases strictly increasing; all within budget ceil(N D p^2/(p-1)^2) + 3";
}

}  // namespace

int main() {
  std::vector<CaseRun> runs;
  for (JobConfig c : standard_battery(kPrecision)) {
    c.lmax = kOracleLmax;
    CaseRun r;
    r.degenerate = c.name.rfind("degenerate", 0) == 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.report = run(c).report;
    } catch (const Error& e) {
      std::cout << "case " << c.name << " raised " << e.what() << "\n";
      return 2;
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.config = std::move(c);
    std::cout << "case " << std::left << std::setw(26) << r.config.name << " " << fmt_secs(r.seconds) << "\n";
    runs.push_back(std::move(r));
  }

  std::vector<Verdict> verdicts{{1, "cross-route consensus"},     {2, "oracle convergence"},
                                {3, "exact analytic case"},       {4, "uniqueness of the unit root"},
                                {5, "degenerate case"},           {6, "hypergeometric system"},
                                {7, "analytic continuation"},     {8, "bound suites"},
                                {9, "adjointness"},               {10, "power-iteration contraction"}};
  const std::map<int, std::function<void(Verdict&)>> checks{
      {1, [&](Verdict& v) { criterion_consensus(runs, v); }},
      {2, [&](Verdict& v) { criterion_oracle(runs, v); }},
      {3, [&](Verdict& v) { criterion_exact(runs, v); }},
      {4, [&](Verdict& v) { criterion_polygon(runs, v); }},
      {5, [&](Verdict& v) { criterion_degenerate(runs, v); }},
      {6, [&](Verdict& v) { criterion_annihilators(v); }},
      {7, [&](Verdict& v) { criterion_shells(v); }},
      {8, [&](Verdict& v) { criterion_bounds(runs, v); }},
      {9, [&](Verdict& v) { criterion_adjoint(runs, v); }},
      {10, [&](Verdict& v) { criterion_contraction(runs, v); }}};

  int failures = 0;
  for (auto& v : verdicts) {
    try {
      checks.at(v.id)(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    for (const auto& n : v.notes) std::cout << "  [" << v.id << "] " << n << "\n";
  }
  std::cout << "\n";
  for (const auto& v : verdicts) {
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << v.id << " (" << v.title << "): " << v.summary << "\n";
  }
  return failures == 0 ? 0 : 1;
}
