#include "qell/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qell {

namespace {

void require_valid(const Json& doc, const char* schema) {
  const SchemaReport r = schema_validate(doc, schema);
  if (r.ok) return;
  std::string msg = std::string(schema) + " document is invalid:";
  for (const auto& e : r.errors) msg += "\n  " + e;
  throw InputError(msg);
}

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + " is not valid JSON: " + e.what());
  }
}

// '{...}' inline, '@path' from a file; nullopt for anything else.
std::optional<Json> json_arg(const std::string& arg, const std::string& what) {
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return parse_text(arg, what);
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InputError("cannot read " + what + " file '" + arg.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), what);
  }
  return std::nullopt;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError("expected an integer for " + what + ", got '" + s + "'");
  return v;
}

std::string fraction(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

mpq_class parse_rational(const std::string& s) {
  if (!is_reduced_fraction(s, false)) throw InputError("'" + s + "' is not a reduced fraction");
  mpq_class q(s);
  q.canonicalize();
  return q;
}

std::vector<int> builtin_factors(const std::string& name) {
  std::vector<int> out;
  for (const auto& part : split(name, 'x')) {
    if (part == "1" || part == "trivial") {
      out.push_back(1);
    } else if (part == "V4") {
      out.insert(out.end(), {2, 2});
    } else if (part.size() > 1 && (part[0] == 'Z' || part[0] == 'C')) {
      out.push_back(std::stoi(part.substr(1)));
    } else {
      return {};
    }
  }
  return out;
}

struct Built {
  FiniteGroup group;
  std::vector<int> factors;
  bool cyclic_product;
};

Built build_group_rec(const Json& spec) {
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "builtin") {
    const std::string name = spec["name"].get<std::string>();
    auto f = builtin_factors(name);
    long order = 1;
    for (const auto& part : split(name, 'x')) {
      // refuse oversized builtins before building their tables
      if (part.size() > 1 && std::isdigit(static_cast<unsigned char>(part[1]))) {
        const long k = std::stol(part.substr(1));
        order *= part[0] == 'D' ? 2 * k : (part[0] == 'S' ? (k <= 5 ? 120 : 1000) : k);
        if (order > kDefaultGroupBound) throw InputError("group '" + name + "' exceeds the size bound");
      }
    }
    FiniteGroup g = builtin_group(name);
    const bool cyc = !f.empty();
    return {std::move(g), std::move(f), cyc};
  }
  if (kind == "table") {
    const auto table = spec["table"].get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) > kDefaultGroupBound) throw InputError("table exceeds the size bound");
    std::vector<std::string> labels;
    if (spec.contains("labels")) labels = spec["labels"].get<std::vector<std::string>>();
    return {FiniteGroup::from_table(table, std::move(labels)), {}, false};
  }
  if (kind == "perms") {
    return {permutation_group(spec["degree"].get<int>(), spec["gens"].get<std::vector<std::vector<int>>>()),
            {},
            false};
  }
  // product
  std::optional<Built> acc;
  for (const auto& f : spec["factors"]) {
    Built b = build_group_rec(f);
    if (!acc) {
      acc = std::move(b);
      continue;
    }
    if (static_cast<long>(acc->group.order()) * b.group.order() > kDefaultGroupBound)
      throw InputError("product exceeds the size bound");
    acc->group = direct_product(acc->group, b.group);
    acc->cyclic_product = acc->cyclic_product && b.cyclic_product;
    acc->factors.insert(acc->factors.end(), b.factors.begin(), b.factors.end());
  }
  return std::move(*acc);
}

}  // namespace

std::string pair_key(CommutingPair p) {
  return "(" + std::to_string(p.g) + "," + std::to_string(p.h) + ")";
}

Json group_spec_from_arg(const std::string& arg) {
  if (auto j = json_arg(arg, "group")) return *j;
  if (arg.rfind("builtin:", 0) == 0) return {{"kind", "builtin"}, {"name", arg.substr(8)}};
  throw InputError("group must be builtin:NAME, @file or inline JSON, got '" + arg + "'");
}

Json cocycle_spec_from_arg(const std::string& arg) {
  if (auto j = json_arg(arg, "cocycle")) return *j;
  if (arg == "zero") return {{"family", "zero"}};
  const auto parts = split(arg, ':');
  if (parts[0] == "cyclic" && parts.size() == 3)
    return {{"family", "cyclic"}, {"n", parse_long(parts[1], "n")}, {"k", parse_long(parts[2], "k")}};
  if (parts[0] == "triple" && parts.size() == 4)
    return {{"family", "triple"},
            {"i", parse_long(parts[1], "i")},
            {"j", parse_long(parts[2], "j")},
            {"k", parse_long(parts[3], "k")}};
  if (parts[0] == "explicit" && parts.size() == 2) {
    Json entries = Json::array();
    if (!parts[1].empty())
      for (const auto& e : split(parts[1], ';')) {
        const auto kv = split(e, '=');
        const auto idx = split(kv[0], ',');
        if (kv.size() != 2 || idx.size() != 3) throw InputError("explicit entry must look like i,j,k=p/q: '" + e + "'");
        entries.push_back(Json::array({Json::array({parse_long(idx[0], "index"), parse_long(idx[1], "index"),
                                                    parse_long(idx[2], "index")}),
                                       kv[1]}));
      }
    return {{"kind", "explicit"}, {"entries", entries}};
  }
  throw InputError("unrecognized cocycle '" + arg + "'");
}

Json space_spec_from_arg(const std::string& arg) {
  if (auto j = json_arg(arg, "space")) return *j;
  if (arg == "pt" || arg == "point") return {{"kind", "point"}};
  if (arg == "regular") return {{"kind", "regular"}};
  const auto parts = split(arg, ':');
  if (parts[0] == "trivial" && parts.size() == 2) return {{"kind", "trivial"}, {"size", parse_long(parts[1], "size")}};
  throw InputError("space must be pt, regular, trivial:n, @file or inline JSON, got '" + arg + "'");
}

Json class_spec_from_arg(const std::string& arg) {
  if (auto j = json_arg(arg, "class")) return *j;
  throw InputError("class must be @file or inline JSON");
}

GroupInput build_group(const Json& spec) {
  require_valid(spec, "group");
  Built b = build_group_rec(spec);
  GroupInput in;
  in.group = share(std::move(b.group));
  if (b.cyclic_product) in.cyclic_factors = std::move(b.factors);
  in.spec = spec;
  return in;
}

Cochain3 build_cocycle(const Json& spec, const GroupInput& g) {
  require_valid(spec, "cocycle");
  const GroupPtr& G = g.group;
  const int n = G->order();
  if (spec.contains("family")) {
    const std::string fam = spec["family"].get<std::string>();
    if (fam == "zero") return Cochain3::zero(G);
    if (fam == "cyclic") {
      const int m = spec["n"].get<int>(), k = spec["k"].get<int>();
      if (k >= m) throw InputError("cyclic cocycle needs 0 <= k < n");
      if (m > kDefaultGroupBound) throw InputError("cyclic cocycle modulus exceeds the size bound");
      const Cochain3 base = cyclic_cocycle(m, k);
      if (g.cyclic_factors == std::vector<int>{m}) return Cochain3{G, base.values};
      const auto image = find_surjection_to_cyclic(*G, m);
      if (image.empty()) throw InputError("the group has no surjection onto Z/" + std::to_string(m));
      return pullback_cochain(GroupHom::make(G, base.group, image), base);
    }
    // triple
    if (g.cyclic_factors.empty())
      throw InputError("triple cocycles need a builtin product of cyclic groups");
    const int r = static_cast<int>(g.cyclic_factors.size());
    const int i = spec["i"].get<int>(), j = spec["j"].get<int>(), k = spec["k"].get<int>();
    if (i >= r || j >= r || k >= r) throw InputError("triple cocycle factor index out of range");
    return triple_product_cocycle(G, g.cyclic_factors, i, j, k);
  }
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "explicit") {
    Cochain3 a = Cochain3::zero(G);
    for (std::size_t e = 0; e < spec["entries"].size(); ++e) {
      const Json& entry = spec["entries"][e];
      const auto idx = entry[0].get<std::vector<int>>();
      for (int x : idx)
        if (x >= n) throw InputError("/entries/" + std::to_string(e) + "/0: element index out of range");
      a.at(idx[0], idx[1], idx[2]) = QZ::parse(entry[1].get<std::string>());
    }
    return a;
  }
  // coboundary shift of a base cocycle
  Cochain3 base = spec.contains("base") ? build_cocycle(spec["base"], g) : Cochain3::zero(G);
  Cochain2 beta = Cochain2::zero(G);
  for (std::size_t e = 0; e < spec["beta"].size(); ++e) {
    const Json& entry = spec["beta"][e];
    const auto idx = entry[0].get<std::vector<int>>();
    for (int x : idx)
      if (x >= n) throw InputError("/beta/" + std::to_string(e) + "/0: element index out of range");
    beta.at(idx[0], idx[1]) = QZ::parse(entry[1].get<std::string>());
  }
  return base + coboundary3(beta);
}

GSet build_gset(const Json& spec, const GroupPtr& g) {
  require_valid(spec, "gset");
  if (spec.contains("action")) {
    const int size = spec["size"].get<int>();
    std::vector<int> flat;
    for (const auto& row : spec["action"]) {
      if (static_cast<int>(row.size()) != g->order())
        throw InputError("action rows must have one entry per group element");
      for (const auto& v : row) flat.push_back(v.get<int>());
    }
    return GSet::make(g, size, std::move(flat));
  }
  const std::string kind = spec["kind"].get<std::string>();
  if (kind == "point") return GSet::point(g);
  if (kind == "regular") return GSet::regular(g);
  const int size = spec["size"].get<int>();
  if (size > kDefaultGroupBound) throw InputError("G-set exceeds the size bound");
  return GSet::trivial(g, size);
}

QEllClass build_class(const Json& spec, const QEllSpacePtr& s) {
  require_valid(spec, "class");
  QEllClass c;
  c.space = s;
  for (const auto& t : spec) {
    const int sigma = t["sigma"].get<int>();
    bool is_rep = false;
    for (const auto& sec : s->sectors) is_rep = is_rep || sec.sigma == sigma;
    if (!is_rep) throw InputError("sigma " + std::to_string(sigma) + " is not a conjugacy class representative");
    c.add({sigma, t["orbit"].get<int>(), t["irrep"].get<int>(), t["q_shift"].get<int>()}, t["coeff"].get<long>());
  }
  return c;
}

Json to_json(QZ x) { return x.str(); }

Json to_json(const Cyclotomic& c) {
  Json coeffs = Json::object();
  for (std::size_t r = 0; r < c.coeffs().size(); ++r)
    if (c.coeffs()[r] != 0) coeffs[std::to_string(r)] = fraction(c.coeffs()[r]);
  return {{"m", c.modulus()}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("coeffs") || !j["m"].is_number_integer() ||
      j["m"].get<long>() < 1 || !j["coeffs"].is_object())
    throw InputError("cyclotomic must be {\"m\":m,\"coeffs\":{...}}");
  std::map<long, mpq_class> raw;
  for (const auto& [k, v] : j["coeffs"].items()) {
    if (!v.is_string()) throw InputError("cyclotomic coefficient must be a fraction string");
    raw[parse_long(k, "exponent")] += parse_rational(v.get<std::string>());
  }
  return Cyclotomic::from_exponents(j["m"].get<int>(), raw);
}

Json to_json(const CharacterTable& t) {
  Json classes = Json::array(), rows = Json::array();
  for (const auto& c : t.classes)
    classes.push_back({{"representative", c.representative}, {"size", c.members.size()}, {"members", c.members}});
  for (int i = 0; i < t.size(); ++i) {
    Json vals = Json::array();
    for (const auto& v : t.rows[i]) vals.push_back(to_json(v));
    rows.push_back({{"degree", t.degrees[i]}, {"values", vals}});
  }
  return {{"classes", classes}, {"rows", rows}};
}

Json to_json(const Cochain2& c) {
  Json out = Json::array();
  for (int i = 0; i < c.size(); ++i)
    for (int j = 0; j < c.size(); ++j)
      if (!c(i, j).is_zero())
        out.push_back(Json::array({Json::array({c.carrier.to_ambient(i), c.carrier.to_ambient(j)}), c(i, j).str()}));
  return out;
}

Json to_json(const QZCharacter& c) {
  Json out = Json::object();
  for (std::size_t i = 0; i < c.elements.size(); ++i) out[std::to_string(c.elements[i])] = c.values[i].str();
  return out;
}

Json to_json(const EllFunction& f) {
  Json out = Json::array();
  for (const auto& [k, v] : f.terms)
    out.push_back({{"coset", {k.first.c, k.first.d}}, {"n", k.second}, {"coeff", to_json(v)}});
  return out;
}

EllFunction ell_function_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("elliptic function must be a list of terms");
  EllFunction f;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coset") || !t.contains("n") || !t.contains("coeff"))
      throw InputError("term must have coset, n and coeff");
    const auto cd = t["coset"].get<std::vector<long>>();
    if (cd.size() != 2) throw InputError("coset must be [c,d]");
    f.add_term(Coset::of(cd[0], cd[1]), t["n"].get<long>(), cyclotomic_from_json(t["coeff"]));
  }
  return f;
}

Json to_json(const EllClass& c) {
  Json comps = Json::object();
  for (const auto& [p, comp] : c.components) {
    Json pts = Json::object();
    for (const auto& [x, f] : comp) pts[std::to_string(x)] = to_json(f);
    comps[pair_key(p)] = pts;
  }
  Json out = {{"components", comps}};
  if (c.alpha) {
    Json lines = Json::object();
    for (const auto& [p, l] : c.lines) lines[pair_key(p)] = to_json(l);
    out["lines"] = lines;
  }
  return out;
}

Json to_json(const QEllClass& c) {
  Json out = Json::array();
  for (const auto& [b, v] : c.terms)
    out.push_back({{"sigma", b.sigma}, {"orbit", b.orbit_point}, {"irrep", b.irrep}, {"q_shift", b.q_shift}, {"coeff", v}});
  return out;
}

Json to_json(const RankReport& r) {
  Json sectors = Json::array(), degrees = Json::array();
  for (const auto& s : r.sectors) {
    Json d = Json::object();
    for (const auto& [x, k] : s.degrees) d[x.str()] = k;
    sectors.push_back({{"sigma", s.sigma}, {"rank", s.rank}, {"degrees", d}});
  }
  for (const auto& x : r.all_degrees()) degrees.push_back(x.str());
  return {{"total", r.total}, {"degrees", degrees}, {"sectors", sectors}};
}

Json to_json(const InvariantRankReport& r) {
  Json orbits = Json::array();
  for (const auto& e : r.orbits)
    orbits.push_back({{"representative", pair_key(e.representative)}, {"orbit_size", e.orbit_size}, {"rank", e.rank}});
  return {{"total", r.total}, {"orbits", orbits}};
}

Json to_json(const GradedRepModule& m) {
  Json basis = Json::array();
  for (const auto& l : m.basis)
    basis.push_back({{"irrep", l.irrep}, {"degree", l.degree}, {"x", l.x.str()}, {"sigma_scalar", to_json(l.sigma_scalar)}});
  return {{"g", m.g}, {"N", m.N}, {"carrier", m.carrier.embedding}, {"basis", basis}};
}

Json to_json(const SL2Matrix& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

}  // namespace qell
