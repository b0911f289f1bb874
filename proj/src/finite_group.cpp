#include "qell/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qell {

namespace {

std::string index_label(int i) { return std::to_string(i); }

}  // namespace

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("group table is empty");
  if (n > kDefaultGroupBound)
    throw InputError("group order " + std::to_string(n) + " exceeds bound " +
                     std::to_string(kDefaultGroupBound));
  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw InputError("group table row " + std::to_string(i) + " has wrong length");
    for (int j = 0; j < n; ++j) {
      const int v = table[i][j];
      if (v < 0 || v >= n)
        throw InputError("group table entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range");
      g.table_[static_cast<std::size_t>(i) * n + j] = v;
    }
  }

  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) ok = g.mul(i, j) == j && g.mul(j, i) == j;
    if (ok) e = i;
  }
  if (e < 0) throw InputError("group table has no two-sided identity");
  g.identity_ = e;

  g.inverses_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.mul(i, j) == e && g.mul(j, i) == e) {
        g.inverses_[i] = j;
        break;
      }
    }
    if (g.inverses_[i] < 0) throw InputError("element " + std::to_string(i) + " has no inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c)))
          throw InputError("group table is not associative at (" + std::to_string(a) + "," +
                           std::to_string(b) + "," + std::to_string(c) + ")");
    }

  g.orders_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int k = 1;
    int x = i;
    while (x != e) {
      x = g.mul(x, i);
      ++k;
    }
    g.orders_[i] = k;
  }

  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back(index_label(i));
  } else if (static_cast<int>(labels.size()) != n) {
    throw InputError("label count does not match group order");
  }
  g.labels_ = std::move(labels);
  return g;
}

int FiniteGroup::pow(int g, std::int64_t k) const {
  const std::int64_t o = orders_[g];
  std::int64_t r = k % o;
  if (r < 0) r += o;
  int x = identity_;
  for (std::int64_t i = 0; i < r; ++i) x = mul(x, g);
  return x;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (int o : orders_) e = std::lcm(e, o);
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (!commute(a, b)) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(order_, std::vector<int>(order_));
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) t[i][j] = mul(i, j);
  return t;
}

// ---------------------------------------------------------------------------

GroupHom GroupHom::make(GroupPtr domain, GroupPtr codomain, std::vector<int> image) {
  if (static_cast<int>(image.size()) != domain->order())
    throw InputError("homomorphism image has wrong length");
  for (int v : image)
    if (v < 0 || v >= codomain->order()) throw InputError("homomorphism image out of range");
  for (int a = 0; a < domain->order(); ++a)
    for (int b = 0; b < domain->order(); ++b)
      if (image[domain->mul(a, b)] != codomain->mul(image[a], image[b]))
        throw InputError("map is not a homomorphism at (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
  return GroupHom{std::move(domain), std::move(codomain), std::move(image)};
}

GroupHom GroupHom::identity(GroupPtr g) {
  std::vector<int> im(g->order());
  std::iota(im.begin(), im.end(), 0);
  return GroupHom{g, g, std::move(im)};
}

GroupHom GroupHom::trivial(GroupPtr domain, GroupPtr codomain) {
  std::vector<int> im(domain->order(), codomain->identity());
  return GroupHom{std::move(domain), std::move(codomain), std::move(im)};
}

Subgroup make_subgroup(const GroupPtr& ambient, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  Subgroup s;
  s.ambient = ambient;
  s.local_of.assign(ambient->order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) s.local_of[elements[i]] = static_cast<int>(i);
  const int m = static_cast<int>(elements.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int i = 0; i < m; ++i) {
    labels.push_back(ambient->label(elements[i]));
    for (int j = 0; j < m; ++j) {
      const int p = s.local_of[ambient->mul(elements[i], elements[j])];
      if (p < 0) throw InputError("subset is not closed under multiplication");
      table[i][j] = p;
    }
  }
  s.embedding = std::move(elements);
  s.group = share(FiniteGroup::from_table(table, std::move(labels)));
  return s;
}

Subgroup whole_group(const GroupPtr& g) {
  Subgroup s;
  s.ambient = g;
  s.group = g;
  s.embedding.resize(g->order());
  std::iota(s.embedding.begin(), s.embedding.end(), 0);
  s.local_of = s.embedding;
  return s;
}

GroupHom inclusion(const Subgroup& s) { return GroupHom{s.group, s.ambient, s.embedding}; }

// ---------------------------------------------------------------------------

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table(t);
}

FiniteGroup dihedral_group(int n) {
  if (n < 1) throw InputError("dihedral parameter must be positive");
  // r^k s^j has index j*n + k; s r s = r^{-1}.
  const int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int x = 0; x < m; ++x) {
    const int i = x / n, a = x % n;
    std::string lab;
    if (a == 1) lab = "r";
    if (a > 1) lab = "r" + std::to_string(a);
    if (i) lab += "s";
    labels[x] = lab.empty() ? "e" : lab;
    for (int y = 0; y < m; ++y) {
      const int j = y / n, b = y % n;
      const int k = ((a + (i ? -b : b)) % n + n) % n;
      t[x][y] = ((i + j) % 2) * n + k;
    }
  }
  return FiniteGroup::from_table(t, std::move(labels));
}

FiniteGroup permutation_group(int degree, const std::vector<std::vector<int>>& gens,
                              int size_bound) {
  if (degree < 1) throw InputError("permutation degree must be positive");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) throw InputError("generator has wrong degree");
    std::vector<int> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v]++) throw InputError("generator is not a permutation");
    }
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  auto compose = [degree](const std::vector<int>& g, const std::vector<int>& h) {
    std::vector<int> r(degree);
    for (int i = 0; i < degree; ++i) r[i] = h[g[i]];
    return r;
  };
  for (std::size_t cur = 0; cur < elems.size(); ++cur) {
    for (const auto& s : gens) {
      auto next = compose(elems[cur], s);
      if (!index.count(next)) {
        if (static_cast<int>(elems.size()) >= size_bound)
          throw InputError("permutation closure exceeds size bound " + std::to_string(size_bound));
        index.emplace(next, static_cast<int>(elems.size()));
        elems.push_back(std::move(next));
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) {
    std::ostringstream os;
    os << '[';
    for (int k = 0; k < degree; ++k) os << (k ? "," : "") << elems[i][k];
    os << ']';
    labels[i] = os.str();
    for (int j = 0; j < n; ++j) t[i][j] = index.at(compose(elems[i], elems[j]));
  }
  return FiniteGroup::from_table(t, std::move(labels));
}

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 5) throw InputError("symmetric group degree must be in 1..5");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    std::ostringstream os;
    os << '[';
    for (int k = 0; k < n; ++k) os << (k ? "," : "") << perms[i][k];
    os << ']';
    labels[i] = os.str();
    for (int j = 0; j < m; ++j) {
      std::vector<int> r(n);
      for (int k = 0; k < n; ++k) r[k] = perms[j][perms[i][k]];
      t[i][j] = index.at(r);
    }
  }
  return FiniteGroup::from_table(t, std::move(labels));
}

FiniteGroup quaternion_group() {
  // index = 2*unit + negative, units 1,i,j,k.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = std::string(x % 2 ? "-" : "") + names[x / 2];
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int s = (x % 2 + y % 2 + sign_mul[u][v]) % 2;
      t[x][y] = 2 * unit_mul[u][v] + s;
    }
  }
  return FiniteGroup::from_table(t, std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  if (static_cast<long>(na) * nb > kDefaultGroupBound)
    throw InputError("direct product exceeds group size bound");
  const int n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
    for (int y = 0; y < n; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup::from_table(t, std::move(labels));
}

FiniteGroup builtin_group(const std::string& name) {
  if (name.find('x') != std::string::npos) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : name) {
      if (ch == 'x') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    FiniteGroup g = builtin_group(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, builtin_group(parts[i]));
    return g;
  }
  auto number = [&](std::size_t from) {
    const std::string digits = name.substr(from);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
        digits.size() > 4)
      throw InputError("unknown builtin group '" + name + "'");
    return std::stoi(digits);
  };
  if (name == "1" || name == "trivial") return cyclic_group(1);
  if (name == "Q8") return quaternion_group();
  if (name == "V4") return direct_product(cyclic_group(2), cyclic_group(2));
  if (name == "A4")
    return permutation_group(4, {{1, 2, 0, 3}, {1, 0, 3, 2}});
  if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'C')) return cyclic_group(number(1));
  if (name.size() > 1 && name[0] == 'D') return dihedral_group(number(1));
  if (name.size() > 1 && name[0] == 'S') return symmetric_group(number(1));
  throw InputError("unknown builtin group '" + name + "'");
}

// ---------------------------------------------------------------------------

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
  std::vector<ConjugacyClass> out;
  std::vector<char> seen(g.order(), 0);
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ConjugacyClass c{x, {}};
    for (int k = 0; k < g.order(); ++k) {
      const int y = g.conj(x, k);
      if (!seen[y]) {
        seen[y] = 1;
        c.members.push_back(y);
      }
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> class_index(const FiniteGroup& g, const std::vector<ConjugacyClass>& classes) {
  std::vector<int> idx(g.order(), -1);
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (int m : classes[i].members) idx[m] = static_cast<int>(i);
  return idx;
}

std::vector<int> centralizer(const FiniteGroup& g, const std::vector<int>& elems) {
  std::vector<int> out;
  for (int k = 0; k < g.order(); ++k) {
    bool ok = true;
    for (int e : elems) ok = ok && g.commute(k, e);
    if (ok) out.push_back(k);
  }
  return out;
}

Subgroup centralizer_subgroup(const GroupPtr& g, const std::vector<int>& elems) {
  return make_subgroup(g, centralizer(*g, elems));
}

int find_conjugator(const FiniteGroup& g, int from, int to) {
  for (int k = 0; k < g.order(); ++k)
    if (g.conj(from, k) == to) return k;
  return -1;
}

std::vector<int> conjugators(const FiniteGroup& g, int from, int to) {
  std::vector<int> out;
  for (int k = 0; k < g.order(); ++k)
    if (g.conj(from, k) == to) out.push_back(k);
  return out;
}

std::vector<int> generating_set(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  for (int x = 0; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::fill(in.begin(), in.end(), 0);
    in[g.identity()] = 1;
    std::vector<int> span{g.identity()};
    for (std::size_t i = 0; i < span.size(); ++i)
      for (int s : gens) {
        const int y = g.mul(span[i], s);
        if (!in[y]) {
          in[y] = 1;
          span.push_back(y);
        }
      }
  }
  return gens;
}

std::vector<int> find_surjection_to_cyclic(const FiniteGroup& g, int n) {
  if (n == 1) return std::vector<int>(g.order(), 0);
  const auto gens = generating_set(g);
  const int r = static_cast<int>(gens.size());
  std::vector<int> assign(r, 0);
  while (true) {
    // advance odometer (skip the all-zero map first time)
    int pos = 0;
    while (pos < r && ++assign[pos] == n) assign[pos++] = 0;
    if (pos == r) break;
    std::vector<int> image(g.order(), -1);
    image[g.identity()] = 0;
    std::vector<int> queue{g.identity()};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i) {
      for (int k = 0; k < r && ok; ++k) {
        const int y = g.mul(queue[i], gens[k]);
        const int v = (image[queue[i]] + assign[k]) % n;
        if (image[y] < 0) {
          image[y] = v;
          queue.push_back(y);
        } else if (image[y] != v) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int a = 0; a < g.order() && ok; ++a)
      for (int b = 0; b < g.order() && ok; ++b)
        ok = image[g.mul(a, b)] == (image[a] + image[b]) % n;
    if (!ok) continue;
    std::vector<char> hit(n, 0);
    for (int v : image) hit[v] = 1;
    if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) return image;
  }
  return {};
}

// ---------------------------------------------------------------------------

std::vector<CommutingPair> commuting_pairs(const FiniteGroup& g) {
  std::vector<CommutingPair> out;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (g.commute(a, b)) out.push_back({a, b});
  return out;
}

SL2Matrix SL2Matrix::make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (a * d - b * c != 1) throw InputError("matrix is not in SL2(Z)");
  return {a, b, c, d};
}

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

std::string to_string(const SL2Matrix& m) {
  std::ostringstream os;
  os << '(' << m.a << ',' << m.b << ';' << m.c << ',' << m.d << ')';
  return os.str();
}

CommutingPair sl2_act_pair(const FiniteGroup& g, const SL2Matrix& a, CommutingPair p) {
  return {g.mul(g.pow(p.g, a.d), g.pow(p.h, -a.b)), g.mul(g.pow(p.g, -a.c), g.pow(p.h, a.a))};
}

std::vector<PairOrbit> pair_orbits(const FiniteGroup& g, PairAction acting) {
  const auto pairs = commuting_pairs(g);
  std::set<CommutingPair> seen;
  std::vector<PairOrbit> out;
  for (const auto& start : pairs) {
    if (seen.count(start)) continue;
    std::set<CommutingPair> orbit{start};
    std::deque<CommutingPair> queue{start};
    while (!queue.empty()) {
      const auto p = queue.front();
      queue.pop_front();
      std::vector<CommutingPair> next;
      for (int k = 0; k < g.order(); ++k) next.push_back(conj_pair(g, p, k));
      if (acting == PairAction::conjugation_and_sl2) {
        next.push_back(sl2_act_pair(g, SL2Matrix::S(), p));
        next.push_back(sl2_act_pair(g, SL2Matrix::T(), p));
      }
      for (const auto& q : next)
        if (orbit.insert(q).second) queue.push_back(q);
    }
    PairOrbit o;
    o.members.assign(orbit.begin(), orbit.end());
    o.representative = o.members.front();
    o.stabilizer = centralizer(g, {o.representative.g, o.representative.h});
    seen.insert(orbit.begin(), orbit.end());
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace qell
