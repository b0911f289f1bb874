// Acceptance run: one [PASS]/[FAIL] line per criterion.
//   qell_acceptance <path to qell CLI> <scratch directory>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qell/suite.hpp"

using namespace qell;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

GroupPtr make(const std::string& name) { return share(builtin_group(name)); }

void absorb(Outcome& out, const std::vector<CheckResult>& results, const std::vector<std::string>& names) {
  for (const auto& r : results) {
    if (!names.empty() && std::find(names.begin(), names.end(), r.name) == names.end()) continue;
    if (!r.ok) out.fail(r.name + ": " + r.witness);
  }
}

Outcome ac1() {
  Outcome out;
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k < n; ++k) {
      const auto r = check_cocycle3(cyclic_cocycle(n, k));
      out.require(r.ok, "cyclic(" + std::to_string(n) + "," + std::to_string(k) + ") fails the cocycle condition");
    }
  std::mt19937_64 rng(101);
  int groups = 0;
  for (const auto& g : suite_groups()) {
    if (g.group->order() > 8) continue;
    ++groups;
    for (int t = 0; t < 100; ++t) {
      const Cochain3 d = coboundary3(random_normalized_cochain2(g.group, 2 + static_cast<int>(rng() % 5), rng));
      out.require(check_cocycle3(d).ok, g.spec.dump() + ": coboundary fails the cocycle condition");
    }
  }
  out.detail = out.ok ? "cyclic(n,k) for n<=8; 100 coboundaries on each of " + std::to_string(groups) + " groups"
                      : out.detail;
  return out;
}

Outcome ac2() {
  Outcome out;
  long cases = 0;
  for (const auto& g : suite_groups())
    for (const auto& c : suite_cocycles(g, 1)) {
      if (!c.alpha) continue;
      for (int x = 0; x < g.group->order(); ++x) {
        ++cases;
        const auto r = check_cocycle2(transgress(*c.alpha, x));
        out.require(r.ok, g.spec.dump() + " " + c.label + " at " + std::to_string(x));
      }
    }
  if (out.ok) out.detail = std::to_string(cases) + " transgressions are 2-cocycles";
  return out;
}

Outcome ac3(const VerifyScope& scope) {
  Outcome out;
  absorb(out, run_verify("lemma", scope), {});
  const CentralExtension e = central_extension(transgress(cyclic_cocycle(2, 1), 1));
  const int order = extension_element_order(e, QZ(), 1);
  out.require(order == 4, "sharp case has order " + std::to_string(order));
  if (out.ok) out.detail = "lift orders divide value_order * element_order; Z/2 sharp case has order 4";
  return out;
}

Outcome ac4() {
  Outcome out;
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("Z" + std::to_string(n));
  for (const char* n : {"S3", "S4", "D4", "Q8", "Z2xZ2"}) names.emplace_back(n);
  for (const auto& name : names) {
    const auto t = character_table(make(name));
    out.require(t->size() == static_cast<int>(t->classes.size()), name + ": rows != classes");
    long sum = 0;
    for (int i = 0; i < t->size(); ++i) {
      sum += static_cast<long>(t->degrees[i]) * t->degrees[i];
      for (int j = 0; j < t->size(); ++j)
        out.require(inner_product(*t, t->rows[i], t->rows[j]) == Cyclotomic(i == j ? 1 : 0),
                    name + ": rows " + std::to_string(i) + "," + std::to_string(j) + " not orthonormal");
    }
    out.require(sum == t->group->order(), name + ": sum of squared degrees is " + std::to_string(sum));
  }
  if (out.ok) out.detail = std::to_string(names.size()) + " tables orthonormal and complete";
  return out;
}

Outcome ac5() {
  Outcome out;
  const auto z2 = make("Z2"), s3 = make("S3");
  const auto a = qell_rank_report(*qell_basis(z2, GSet::point(z2), std::nullopt));
  out.require(a.total == 4 && a.all_degrees() == std::vector<QZ>{QZ(), QZ(), QZ(), QZ(1, 2)}, "(Z/2, pt) ranks");
  out.require(qell_rank_report(*qell_basis(s3, GSet::point(s3), std::nullopt)).total == 8, "(S3, pt) rank");
  const auto t = qell_rank_report(*qell_basis(z2, GSet::point(z2), cyclic_cocycle(2, 1)));
  out.require(t.all_degrees() == std::vector<QZ>{QZ(), QZ(), QZ(1, 4), QZ(3, 4)}, "twisted (Z/2, pt) degrees");
  for (const auto& g : suite_groups())
    for (const auto& sp : suite_spaces(g.group)) {
      const auto u = qell_basis(g.group, sp.gset, std::nullopt);
      const auto z = qell_basis(g.group, sp.gset, Cochain3::zero(g.group));
      bool same = u->basis == z->basis;
      for (std::size_t i = 0; same && i < u->basis.size(); ++i) same = u->degree(u->basis[i]) == z->degree(z->basis[i]);
      out.require(same, g.spec.dump() + " " + sp.label + ": zero twist changes the basis");
    }
  if (out.ok) out.detail = "Z/2: 4 {0,0,0,1/2}; S3: 8; twisted Z/2 {0,0,1/4,3/4}; degeneration on all suite bases";
  return out;
}

Outcome ac6(const VerifyScope& scope) {
  Outcome out;
  absorb(out, run_verify("transgression", scope), {"transgression/pullback-square"});
  const auto z4 = make("Z4"), z2 = make("Z2");
  const auto big = qell_basis(z4, GSet::point(z4), std::nullopt);
  const auto small = qell_basis(z2, GSet::point(z2), std::nullopt);
  const EquivariantMap m = EquivariantMap::make(GroupHom::make(z2, z4, {0, 2}), GSet::point(z2), GSet::point(z4), {0});
  for (const auto& b : big->basis) {
    if (b.sigma != 2) continue;
    const QEllClass r = restrict_class(m, QEllClass::generator(big, b));
    // oracle: restriction of the character of Z/4 to {0,2} = Z/2
    const IrrepSystem& from = *big->sector(2).orbits[0].module.irreps;
    const IrrepSystem& to = *small->sector(1).orbits[0].module.irreps;
    int hits = 0;
    for (const auto& [rb, coeff] : r.terms) {
      if (rb.sigma != 1 || coeff != 1) continue;
      if (to.value(rb.irrep, 1) == from.value(b.irrep, 2) && small->degree(rb) == big->degree(b)) ++hits;
    }
    out.require(r.terms.size() == 1 && hits == 1, "Z/2 -> Z/4 restriction of irrep " + std::to_string(b.irrep));
  }
  if (out.ok) out.detail = "pullback square on all suite homs; Z/2 -> Z/4 restriction matches characters";
  return out;
}

// Conjugation orbits of commuting pairs, by brute force.
int pair_orbit_count(const FiniteGroup& g) {
  std::set<std::vector<CommutingPair>> orbits;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      if (!g.commute(a, b)) continue;
      std::vector<CommutingPair> o;
      for (int k = 0; k < g.order(); ++k) o.push_back(conj_pair(g, {a, b}, k));
      std::sort(o.begin(), o.end());
      o.erase(std::unique(o.begin(), o.end()), o.end());
      orbits.insert(o);
    }
  return static_cast<int>(orbits.size());
}

Outcome ac7() {
  Outcome out;
  const int s3 = invariant_rank_pt(make("S3"), std::nullopt).total;
  const int z2 = invariant_rank_pt(make("Z2"), std::nullopt).total;
  const auto q8g = make("Q8");
  const int q8 = invariant_rank_pt(q8g, std::nullopt).total;
  const int q8_oracle = pair_orbit_count(*q8g);
  out.require(s3 == 8, "S3 total " + std::to_string(s3));
  out.require(z2 == 4, "Z/2 total " + std::to_string(z2));
  out.require(q8 == q8_oracle, "Q8 total " + std::to_string(q8) + " vs " + std::to_string(q8_oracle));
  if (out.ok) out.detail = "S3 8, Z/2 4, Q8 " + std::to_string(q8) + " = orbit oracle";
  return out;
}

Outcome ac8(const VerifyScope& scope) {
  Outcome out;
  absorb(out, run_verify("kernel", scope), {"kernel/triviality"});
  absorb(out, run_verify("willerton", scope), {});
  absorb(out, run_verify("sl2", scope), {});
  if (out.ok) out.detail = "kernel, line characters, degeneration and S/T image preservation";
  return out;
}

Outcome ac9(const VerifyScope& scope) {
  Outcome out;
  const auto results = run_verify("devoto", scope);
  absorb(out, results, {"devoto/normal-form", "devoto/sl2-relations"});
  long comparisons = 0, functions = 0;
  for (const auto& r : results) {
    if (r.name == "devoto/normal-form") comparisons = r.cases;
    if (r.name == "devoto/sl2-relations") functions = r.cases;
  }
  out.require(comparisons >= 500, "only " + std::to_string(comparisons) + " comparisons");
  out.require(functions >= 100, "only " + std::to_string(functions) + " functions");
  if (out.ok)
    out.detail = std::to_string(comparisons) + " comparisons at 5 points, " + std::to_string(functions) +
                 " functions under S^4 and (ST)^6";
  return out;
}

// ---------------------------------------------------------------------------
// CLI

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

int run(const std::string& cli, const std::string& args, const fs::path& out, const fs::path& err) {
  const std::string cmd = quote(cli) + " " + args + " >" + quote(out.string()) + " 2>" + quote(err.string());
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10(const std::string& cli, const fs::path& dir) {
  Outcome out;
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "stdout.txt", err = dir / "stderr.txt";

  const fs::path all = dir / "verify-all.json";
  int code = run(cli, "verify all --seed 1 --output " + quote(all.string()), log, err);
  out.require(code == 0, "verify all exited " + std::to_string(code) + ": " + slurp(err));
  if (!out.ok) return out;
  const Json report = Json::parse(slurp(all));
  out.require(report.value("ok", false), "verify all report is not ok");

  // replay from the report, then from its embedded request
  const fs::path replay = dir / "replay.json";
  code = run(cli, "--request " + quote(all.string()), replay, err);
  out.require(code == 0 && slurp(replay) == slurp(all), "replay of verify all is not byte-identical");
  const fs::path request = dir / "request.json";
  {
    std::ofstream r(request);
    r << report["input"].dump(2) << "\n";
  }
  const fs::path replay2 = dir / "replay2.json";
  code = run(cli, "--request " + quote(request.string()), replay2, err);
  out.require(code == 0 && slurp(replay2) == slurp(all), "replay of the embedded request is not byte-identical");

  // the same contract on single computations
  const fs::path qrep = dir / "qell.json";
  code = run(cli, "qell --group builtin:Z2 --space pt --output " + quote(qrep.string()), log, err);
  out.require(code == 0, "qell on (Z/2, pt) exited " + std::to_string(code));
  if (code == 0) {
    const Json q = Json::parse(slurp(qrep));
    out.require(q["result"]["rank"]["total"] == 4, "qell report does not give rank 4");
    const fs::path qreplay = dir / "qell-replay.json";
    out.require(run(cli, "--request " + quote(qrep.string()), qreplay, err) == 0 && slurp(qreplay) == slurp(qrep),
                "qell replay is not byte-identical");
  }
  const fs::path sl2 = dir / "sl2.json";
  code = run(cli, "verify sl2 --group builtin:Z4 --cocycle cyclic:4:1 --output " + quote(sl2.string()), log, err);
  out.require(code == 0, "verify sl2 on Z/4 exited " + std::to_string(code));

  // failed checks: exit 1 with a witness
  const fs::path bad = dir / "bad-cocycle.json";
  code = run(cli, "cocycle-check --group builtin:Z2 --cocycle explicit:1,1,1=1/4 --output " + quote(bad.string()), log,
             err);
  out.require(code == 1, "bad cocycle exited " + std::to_string(code));
  out.require(slurp(err).find("witness") != std::string::npos, "bad cocycle reported no witness");

  // input errors: exit 2 and no output file
  const fs::path none = dir / "never.json";
  code = run(cli, "qell --group builtin:Z2 --space '{\"size\":2,\"action\":[[0,1],[1,7]]}' --output " + quote(none.string()),
             log, err);
  out.require(code == 2, "out-of-range action exited " + std::to_string(code));
  out.require(!fs::exists(none), "output written on input error");
  code = run(cli, "cocycle-check --group builtin:Z2 --cocycle explicit:1,1,1=2/4 --output " + quote(none.string()), log,
             err);
  out.require(code == 2, "unreduced fraction exited " + std::to_string(code));
  code = run(cli, "qell --group builtin:Z2 --bogus", log, err);
  out.require(code == 2, "unknown flag exited " + std::to_string(code));
  out.require(!fs::exists(none), "output written on input error");
  for (const auto& entry : fs::directory_iterator(dir))
    out.require(entry.path().filename().string().find(".tmp") == std::string::npos, "temporary file left behind");

  if (out.ok) out.detail = "verify all exit 0; replays byte-identical; exit codes 0/1/2 as specified";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: qell_acceptance <qell-cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path dir = argv[2];
  const VerifyScope scope = default_scope(1);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 cocycle identities", ac1},
      {"AC2 transgression", ac2},
      {"AC3 order lemma", [&] { return ac3(scope); }},
      {"AC4 character tables", ac4},
      {"AC5 quasi-elliptic ranks", ac5},
      {"AC6 restriction compatibility", [&] { return ac6(scope); }},
      {"AC7 Devoto point counts", ac7},
      {"AC8 Chern pipeline", [&] { return ac8(scope); }},
      {"AC9 EllFunction soundness", [&] { return ac9(scope); }},
      {"AC10 CLI round trip and exit codes", [&] { return ac10(cli, dir); }},
  };

  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failed;
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << name << " (" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s): " << o.detail << std::endl;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << total << " s"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
