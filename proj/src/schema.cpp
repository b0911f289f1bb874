#include "qell/schema.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <functional>
#include <regex>

#include "qell/embedded_schemas.hpp"

namespace qell {

namespace {

const std::map<std::string, std::string_view>& sources() {
  static const std::map<std::string, std::string_view> m = {
      {"group", schemas::group_schema},     {"cocycle", schemas::cocycle_schema},
      {"gset", schemas::gset_schema},       {"class", schemas::class_schema},
      {"request", schemas::request_schema},
  };
  return m;
}

bool has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  void run(const Json& v, const Json& s, const std::string& path, std::vector<std::string>& errs) {
    const std::string where = path.empty() ? "/" : path;
    auto fail = [&](const std::string& msg) { errs.push_back(where + ": " + msg); };

    if (s.contains("$ref")) {
      run(v, resolve(s["$ref"].get<std::string>()), path, errs);
      if (s.size() == 1) return;
    }
    if (s.contains("type")) {
      const Json& t = s["type"];
      bool ok = false;
      if (t.is_string()) {
        ok = has_type(v, t.get<std::string>());
      } else {
        for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
      }
      if (!ok) {
        fail("expected type " + t.dump());
        return;
      }
    }
    if (s.contains("const") && v != s["const"]) fail("expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) fail("value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (s.contains("oneOf")) {
      std::vector<std::string> best;
      std::size_t best_n = SIZE_MAX;
      int matches = 0;
      for (const auto& alt : s["oneOf"]) {
        std::vector<std::string> e;
        run(v, alt, path, e);
        if (e.empty()) {
          ++matches;
        } else if (e.size() < best_n) {
          best_n = e.size();
          best = std::move(e);
        }
      }
      if (matches == 0) {
        fail("matches none of the alternatives");
        errs.insert(errs.end(), best.begin(), best.end());
      } else if (matches > 1) {
        fail("matches more than one alternative");
      }
    }
    if (v.is_number()) {
      if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>())
        fail("below minimum " + s["minimum"].dump());
      if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>())
        fail("above maximum " + s["maximum"].dump());
    }
    if (v.is_string()) {
      const std::string str = v.get<std::string>();
      if (s.contains("pattern") && !std::regex_search(str, std::regex(s["pattern"].get<std::string>())))
        fail("does not match pattern " + s["pattern"].get<std::string>());
      if (s.contains("format")) {
        const std::string f = s["format"].get<std::string>();
        if (f == "reduced-fraction" && !is_reduced_fraction(str, false))
          fail("'" + str + "' is not a reduced fraction p/q");
        if (f == "qz-fraction" && !is_reduced_fraction(str, true))
          fail("'" + str + "' is not a reduced fraction p/q with 0 <= p < q");
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>())
        fail("fewer than " + s["minItems"].dump() + " items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>())
        fail("more than " + s["maxItems"].dump() + " items");
      if (s.contains("items")) {
        const Json& it = s["items"];
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (it.is_array()) {
            if (i < it.size()) run(v[i], it[i], child(path, std::to_string(i)), errs);
          } else {
            run(v[i], it, child(path, std::to_string(i)), errs);
          }
        }
      }
    }
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& r : s["required"])
          if (!v.contains(r.get<std::string>())) fail("missing required key '" + r.get<std::string>() + "'");
      const Json empty = Json::object();
      const Json& props = s.contains("properties") ? s["properties"] : empty;
      for (const auto& [k, x] : v.items()) {
        if (props.contains(k)) {
          run(x, props[k], child(path, k), errs);
        } else if (s.contains("additionalProperties")) {
          const Json& ap = s["additionalProperties"];
          if (ap.is_boolean() && !ap.get<bool>()) {
            errs.push_back(child(path, k) + ": unknown key");
          } else if (ap.is_object()) {
            run(x, ap, child(path, k), errs);
          }
        }
      }
    }
  }

 private:
  const Json& resolve(const std::string& ref) {
    if (ref == "#") return root_;
    if (ref.rfind("#/", 0) != 0) throw std::logic_error("unsupported $ref " + ref);
    return root_.at(Json::json_pointer(ref.substr(1)));
  }

  const Json& root_;
};

// Index ranges a schema cannot state.
void range_checks(const Json& doc, std::string_view name, std::vector<std::string>& errs) {
  if (name == "gset" && doc.contains("action")) {
    const long size = doc["size"].get<long>();
    const Json& a = doc["action"];
    if (static_cast<long>(a.size()) != size)
      errs.push_back("/action: expected " + std::to_string(size) + " rows, found " + std::to_string(a.size()));
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (a[x].size() != a[0].size())
        errs.push_back("/action/" + std::to_string(x) + ": rows have different lengths");
      for (std::size_t g = 0; g < a[x].size(); ++g)
        if (a[x][g].get<long>() >= size)
          errs.push_back("/action/" + std::to_string(x) + "/" + std::to_string(g) + ": point index " +
                         a[x][g].dump() + " out of range");
    }
  }
  if (name == "group") {
    std::function<void(const Json&, const std::string&)> walk = [&](const Json& g, const std::string& path) {
      const std::string kind = g["kind"].get<std::string>();
      if (kind == "table") {
        const Json& t = g["table"];
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (t[i].size() != t.size())
            errs.push_back(path + "/table/" + std::to_string(i) + ": table is not square");
          for (std::size_t j = 0; j < t[i].size(); ++j)
            if (t[i][j].get<std::size_t>() >= t.size())
              errs.push_back(path + "/table/" + std::to_string(i) + "/" + std::to_string(j) +
                             ": element index out of range");
        }
      } else if (kind == "perms") {
        const long deg = g["degree"].get<long>();
        for (std::size_t i = 0; i < g["gens"].size(); ++i) {
          const Json& p = g["gens"][i];
          if (static_cast<long>(p.size()) != deg)
            errs.push_back(path + "/gens/" + std::to_string(i) + ": permutation has wrong length");
          for (std::size_t j = 0; j < p.size(); ++j)
            if (p[j].get<long>() >= deg)
              errs.push_back(path + "/gens/" + std::to_string(i) + "/" + std::to_string(j) +
                             ": image out of range");
        }
      } else if (kind == "product") {
        for (std::size_t i = 0; i < g["factors"].size(); ++i)
          walk(g["factors"][i], path + "/factors/" + std::to_string(i));
      }
    };
    walk(doc, "");
  }
}

}  // namespace

bool is_reduced_fraction(const std::string& s, bool qz) {
  static const std::regex re("^(-?)([0-9]{1,18})/([0-9]{1,18})$");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return false;
  const long long p = std::stoll(m[2]), q = std::stoll(m[3]);
  if (q == 0 || std::gcd(p, q) != 1) return false;
  if (p == 0 && (q != 1 || m[1].length() > 0)) return false;
  if (qz) return m[1].length() == 0 && p < q;
  return true;
}

std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : sources()) out.push_back(k);
  return out;
}

const Json& schema_document(std::string_view schema_name) {
  static std::mutex mu;
  static std::map<std::string, Json> cache;
  std::lock_guard lock(mu);
  const std::string key(schema_name);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto src = sources().find(key);
  if (src == sources().end()) throw std::invalid_argument("unknown schema '" + key + "'");
  return cache.emplace(key, Json::parse(src->second)).first->second;
}

SchemaReport schema_validate(const Json& doc, std::string_view schema_name) {
  const Json& s = schema_document(schema_name);
  SchemaReport r;
  Validator(s).run(doc, s, "", r.errors);
  if (r.errors.empty()) range_checks(doc, schema_name, r.errors);
  r.ok = r.errors.empty();
  return r;
}

}  // namespace qell
