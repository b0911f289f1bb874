// qell: command-line driver. Every run produces one JSON report whose
// "input" member replays the run exactly (--request).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "qell/suite.hpp"

using namespace qell;

namespace {

constexpr int kSchemaVersion = 1;

struct Outcome {
  Json result;
  Json checks = Json::object();
  std::string summary;
};

bool all_true(const Json& checks) {
  if (checks.is_boolean()) return checks.get<bool>();
  if (checks.is_object())
    for (const auto& [k, v] : checks.items())
      if (!all_true(v)) return false;
  return true;
}

GroupInput need_group(const Json& req) {
  if (!req.contains("group") || req["group"].is_null()) throw InputError("--group is required");
  return build_group(req["group"]);
}

std::optional<Cochain3> optional_cocycle(const Json& req, const GroupInput& g) {
  if (!req.contains("cocycle") || req["cocycle"].is_null()) return std::nullopt;
  return build_cocycle(req["cocycle"], g);
}

Cochain3 need_cocycle(const Json& req, const GroupInput& g) {
  auto a = optional_cocycle(req, g);
  if (!a) throw InputError("--cocycle is required");
  return *a;
}

GSet space_of(const Json& req, const GroupPtr& g) {
  if (!req.contains("space") || req["space"].is_null()) return GSet::point(g);
  return build_gset(req["space"], g);
}

std::vector<int> elements_of(const Json& req, const FiniteGroup& g) {
  if (req.contains("element") && !req["element"].is_null()) {
    const int e = req["element"].get<int>();
    if (e >= g.order()) throw InputError("element " + std::to_string(e) + " is not in the group");
    return {e};
  }
  std::vector<int> reps;
  for (const auto& c : conjugacy_classes(g)) reps.push_back(c.representative);
  return reps;
}

std::string degrees_str(const RankReport& r) {
  std::string s;
  for (const auto& x : r.all_degrees()) s += (s.empty() ? "" : " ") + x.str();
  return s;
}

// ---------------------------------------------------------------------------

Outcome group_info(const Json& req) {
  const GroupInput in = need_group(req);
  const FiniteGroup& g = *in.group;
  Outcome o;
  Json classes = Json::array();
  for (const auto& c : conjugacy_classes(g))
    classes.push_back({{"representative", c.representative},
                       {"size", c.members.size()},
                       {"members", c.members},
                       {"element_order", g.element_order(c.representative)},
                       {"centralizer_order", centralizer(g, {c.representative}).size()}});
  const auto table = character_table(in.group);
  o.result = {{"order", g.order()},
              {"exponent", g.exponent()},
              {"abelian", g.is_abelian()},
              {"labels", g.labels()},
              {"classes", classes},
              {"commuting_pairs", commuting_pairs(g).size()},
              {"pair_orbits", {{"conjugation", pair_orbits(g, PairAction::conjugation).size()},
                               {"conjugation_and_sl2", pair_orbits(g, PairAction::conjugation_and_sl2).size()}}},
              {"character_table", to_json(*table)}};
  o.checks["orthogonality"] = check_orthogonality(*table).ok();
  o.summary = "order " + std::to_string(g.order()) + ", " + std::to_string(classes.size()) + " classes, " +
              std::to_string(o.result["commuting_pairs"].get<int>()) + " commuting pairs";
  return o;
}

Outcome cocycle_check(const Json& req) {
  const GroupInput in = need_group(req);
  const Cochain3 a = need_cocycle(req, in);
  const auto rep = check_cocycle3(a);
  Outcome o;
  o.result = {{"cocycle", rep.ok}, {"normalized", check_normalized(a)}, {"value_order", value_order(a)}};
  if (!rep.ok) o.result["witness"] = rep.witness;
  o.checks = {{"cocycle", rep.ok}, {"normalized", check_normalized(a)}};
  o.summary = rep.ok ? "normalized 3-cocycle check passed" : "cocycle condition fails";
  return o;
}

Outcome transgress_cmd(const Json& req) {
  const GroupInput in = need_group(req);
  const Cochain3 a = need_cocycle(req, in);
  Outcome o;
  o.result = Json::array();
  bool ok = true;
  for (int x : elements_of(req, *in.group)) {
    const Cochain2 th = transgress(a, x);
    const bool c2 = check_cocycle2(th).ok && check_normalized(th);
    ok = ok && c2;
    o.result.push_back({{"element", x},
                        {"centralizer", th.carrier.embedding},
                        {"theta", to_json(th)},
                        {"value_order", value_order(th)}});
  }
  o.checks["cocycle2"] = ok;
  o.summary = "transgressed at " + std::to_string(o.result.size()) + " element(s)";
  return o;
}

Outcome extension_cmd(const Json& req) {
  const GroupInput in = need_group(req);
  const Cochain3 a = need_cocycle(req, in);
  Outcome o;
  o.result = Json::array();
  bool ok = true;
  for (int x : elements_of(req, *in.group)) {
    const Cochain2 th = transgress(a, x);
    const CentralExtension e = central_extension(th);
    const int ord = extension_element_order(e, QZ(), th.carrier.to_local(x));
    const long bound = value_order(th) * in.group->element_order(x);
    ok = ok && bound % ord == 0;
    const GradedRepModule m = lambda_basis(in.group, x, th);
    std::vector<int> degrees;
    for (int i = 0; i < m.irreps->size(); ++i) degrees.push_back(m.irreps->degree(i));
    o.result.push_back({{"element", x},
                        {"n", e.n},
                        {"total_order", e.total->order()},
                        {"total_abelian", e.total->is_abelian()},
                        {"lift_order", ord},
                        {"order_bound", bound},
                        {"projective_degrees", degrees},
                        {"lambda", to_json(m)}});
  }
  o.checks["lemma"] = ok;
  o.summary = "extensions at " + std::to_string(o.result.size()) + " element(s)";
  return o;
}

Json basis_json(const QEllSpace& s) {
  Json out = Json::array();
  for (const auto& b : s.basis) {
    const auto& l = s.irrep(b);
    out.push_back({{"sigma", b.sigma}, {"orbit", b.orbit_point}, {"irrep", b.irrep}, {"degree", l.degree}, {"x", l.x.str()}});
  }
  return out;
}

Outcome qell_cmd(const Json& req) {
  const GroupInput in = need_group(req);
  const auto alpha = optional_cocycle(req, in);
  const auto space = qell_basis(in.group, space_of(req, in.group), alpha);
  const RankReport r = qell_rank_report(*space);
  Outcome o;
  o.result = {{"rank", to_json(r)}, {"basis", basis_json(*space)}};
  o.summary = "total rank " + std::to_string(r.total) + ", degrees {" + degrees_str(r) + "}";
  return o;
}

Outcome devoto_cmd(const Json& req) {
  const GroupInput in = need_group(req);
  const auto alpha = optional_cocycle(req, in);
  const auto r = invariant_rank_pt(in.group, alpha);
  Outcome o;
  o.result = {{"invariants", to_json(r)},
              {"pair_orbits", pair_orbits(*in.group, PairAction::conjugation).size()},
              {"sl2_pair_orbits", pair_orbits(*in.group, PairAction::conjugation_and_sl2).size()}};
  o.summary = "invariant rank over a point: " + std::to_string(r.total);
  return o;
}

Outcome chern_cmd(const Json& req) {
  const GroupInput in = need_group(req);
  const auto alpha = optional_cocycle(req, in);
  const auto space = qell_basis(in.group, space_of(req, in.group), alpha);
  QEllClass c;
  if (req.contains("class") && !req["class"].is_null()) {
    c = build_class(req["class"], space);
  } else {
    c.space = space;
    for (const auto& b : space->basis) c.add(b, 1);
  }
  Outcome o;
  o.result = {{"class", to_json(c)}, {"output", to_json(chern_character(c))}};
  bool kernel = true, willerton = true;
  std::string witness;
  for (const auto& sec : space->sectors) {
    const auto k = kernel_c(*space, sec.sigma);
    if (!k.ok() && kernel) witness = k.witness;
    kernel = kernel && k.ok();
  }
  if (alpha)
    for (const auto& p : commuting_pairs(*in.group))
      willerton = willerton && verify_willerton_line(*alpha, p.g, p.h).ok;
  Json sl2 = Json::object();
  for (const auto& [name, m] : {std::pair{"S", SL2Matrix::S()}, std::pair{"T", SL2Matrix::T()}}) {
    const auto rep = check_image_preservation(m, c);
    sl2[name] = rep.ok;
    if (!rep.ok && witness.empty()) witness = std::string(name) + ": " + rep.mismatch;
  }
  o.checks = {{"kernel", kernel}, {"willerton", willerton}, {"sl2", sl2}};
  if (!witness.empty()) o.result["witness"] = witness;
  o.summary = "Chern image over " + std::to_string(commuting_pairs(*in.group).size()) + " commuting pairs";
  return o;
}

Outcome verify_cmd(const Json& req) {
  const std::string target = req.value("target", std::string("all"));
  const auto seed = req["seed"].get<std::uint64_t>();
  VerifyScope scope;
  if (!req.contains("group") || req["group"].is_null()) {
    if (req.contains("cocycle") && !req["cocycle"].is_null()) throw InputError("--cocycle needs --group");
    if (req.contains("space") && !req["space"].is_null()) throw InputError("--space needs --group");
    scope = default_scope(seed);
  } else {
    scope.seed = seed;
    VerifyCase c;
    c.group = build_group(req["group"]);
    c.name = req["group"].dump();
    const auto alpha = optional_cocycle(req, c.group);
    c.cocycles = alpha ? std::vector<SuiteCocycle>{{"given", alpha}} : suite_cocycles(c.group, seed);
    if (req.contains("space") && !req["space"].is_null()) {
      c.spaces = {{"given", build_gset(req["space"], c.group.group)}};
    } else {
      c.spaces = suite_spaces(c.group.group);
    }
    VerifyCase s = c;
    s.cocycles = {{alpha ? "given" : "untwisted", alpha}};
    if (!req.contains("space") || req["space"].is_null()) s.spaces = {{"pt", GSet::point(c.group.group)}};
    scope.cases.push_back(std::move(c));
    scope.sl2_cases.push_back(std::move(s));
  }
  const auto results = run_verify(target, scope);
  Outcome o;
  o.result = Json::array();
  int passed = 0;
  for (const auto& r : results) {
    Json j = {{"name", r.name}, {"ok", r.ok}, {"cases", r.cases}};
    if (!r.ok) j["witness"] = r.witness;
    o.result.push_back(j);
    o.checks[r.name] = r.ok;
    passed += r.ok;
  }
  o.summary = std::to_string(passed) + "/" + std::to_string(results.size()) + " check groups passed";
  return o;
}

Json run_request(const Json& req, int& exit_code) {
  const SchemaReport sr = schema_validate(req, "request");
  if (!sr.ok) {
    std::string msg = "request document is invalid:";
    for (const auto& e : sr.errors) msg += "\n  " + e;
    throw InputError(msg);
  }
  const std::string cmd = req["command"].get<std::string>();
  Outcome o;
  if (cmd == "group-info") o = group_info(req);
  else if (cmd == "cocycle-check") o = cocycle_check(req);
  else if (cmd == "transgress") o = transgress_cmd(req);
  else if (cmd == "extension") o = extension_cmd(req);
  else if (cmd == "qell") o = qell_cmd(req);
  else if (cmd == "devoto-rank") o = devoto_cmd(req);
  else if (cmd == "chern") o = chern_cmd(req);
  else o = verify_cmd(req);
  const bool ok = all_true(o.checks);
  exit_code = ok ? 0 : 1;
  Json report = {{"command", cmd}, {"input", req}, {"result", o.result}, {"checks", o.checks}, {"ok", ok},
                 {"schema_version", kSchemaVersion}};
  report["summary"] = o.summary;
  return report;
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InputError("cannot write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

Json read_request_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read request file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Json j;
  try {
    j = Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw InputError("request file is not valid JSON: " + std::string(e.what()));
  }
  // a full report replays through its input
  if (j.is_object() && j.contains("input") && j.contains("schema_version")) return j["input"];
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-elliptic cohomology of finite G-sets and its Devoto image"};
  app.require_subcommand(0, 1);

  std::string group, cocycle, space, klass, output, request;
  std::optional<int> element;
  std::uint64_t seed = 1;
  bool verbose = false;
  std::string target = "all";

  app.add_option("--request", request, "Replay a request or report JSON file");
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"group-info", "Group order, classes, commuting pairs and character table"},
      {"cocycle-check", "Check the 3-cocycle and normalization conditions"},
      {"transgress", "Transgress a 3-cocycle to centralizers"},
      {"extension", "Central extensions, lift orders and projective irreducibles"},
      {"qell", "Basis and ranks of (twisted) quasi-elliptic cohomology"},
      {"devoto-rank", "Invariant rank of the Devoto target over a point"},
      {"chern", "Chern character of a class, with kernel, line and SL2 checks"},
      {"verify", "Run property checks"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--group", group, "builtin:NAME, @file or inline JSON");
    s->add_option("--cocycle", cocycle, "zero | cyclic:n:k | triple:i:j:k | explicit:i,j,k=p/q;... | @file | JSON");
    s->add_option("--space", space, "pt | regular | trivial:n | @file | JSON");
    s->add_option("--element", element, "Element index");
    s->add_option("--class", klass, "Class JSON (@file or inline)");
    s->add_option("--output", output, "Report path (default: stdout, or $QELL_OUTPUT_DIR)");
    s->add_option("--seed", seed, "Seed for randomized checks");
    s->add_flag("--verbose,-v", verbose, "Print a summary to stderr");
    if (name == "verify")
      s->add_option("target", target, "Check group")
          ->check(CLI::IsMember({"cocycle", "transgression", "lemma", "characters", "qell", "devoto", "kernel",
                                 "willerton", "sl2", "all"}));
    subs[name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (const auto& [name, s] : subs)
    if (s->parsed()) command = name;

  int exit_code = 0;
  try {
    Json req;
    if (!request.empty()) {
      req = read_request_file(request);
    } else {
      if (command.empty()) throw InputError("a subcommand or --request is required");
      req = {{"command", command}, {"seed", seed}};
      if (command == "verify") req["target"] = target;
      if (!group.empty()) req["group"] = group_spec_from_arg(group);
      if (!cocycle.empty()) req["cocycle"] = cocycle_spec_from_arg(cocycle);
      if (!space.empty()) req["space"] = space_spec_from_arg(space);
      if (!klass.empty()) req["class"] = class_spec_from_arg(klass);
      if (element) {
        if (*element < 0) throw InputError("element index must be non-negative");
        req["element"] = *element;
      }
    }
    const Json report = run_request(req, exit_code);
    const std::string text = report.dump(2) + "\n";

    std::filesystem::path path = output;
    if (path.empty())
      if (const char* dir = std::getenv("QELL_OUTPUT_DIR"); dir && *dir) {
        std::string stem = report["command"].get<std::string>();
        if (req.contains("target")) stem += "-" + req["target"].get<std::string>();
        path = std::filesystem::path(dir) / (stem + ".json");
      }
    if (path.empty()) {
      std::cout << text;
    } else {
      write_atomic(path, text);
      std::cout << report["summary"].get<std::string>() << (exit_code == 0 ? "" : " (checks failed)") << "\n";
    }
    if (verbose) std::cerr << report["summary"].get<std::string>() << "\n";
    if (exit_code != 0)
      for (const auto& r : report["result"])
        if (r.is_object() && r.contains("witness")) std::cerr << "witness: " << r["witness"].dump() << "\n";
    if (exit_code != 0 && report["result"].is_object() && report["result"].contains("witness"))
      std::cerr << "witness: " << report["result"]["witness"].dump() << "\n";
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
