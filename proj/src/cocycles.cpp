#include "qell/cocycles.hpp"

#include <algorithm>
#include <numeric>

namespace qell {

Cochain3 Cochain3::zero(GroupPtr g) {
  const std::size_t n = g->order();
  return Cochain3{std::move(g), std::vector<QZ>(n * n * n)};
}

Cochain2 Cochain2::zero(const Subgroup& h) {
  const std::size_t n = h.order();
  return Cochain2{h, std::vector<QZ>(n * n)};
}

bool Cochain2::same_as(const Cochain2& o) const {
  return carrier.ambient->order() == o.carrier.ambient->order() &&
         carrier.embedding == o.carrier.embedding && values == o.values;
}

QZ QZCharacter::at(int g) const {
  const auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g) throw InputError("element outside character domain");
  return values[it - elements.begin()];
}

bool QZCharacter::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](QZ v) { return v.is_zero(); });
}

Cocycle3Report check_cocycle3(const Cochain3& a) {
  const FiniteGroup& g = *a.group;
  const int n = g.order();
  for (int g0 = 0; g0 < n; ++g0)
    for (int g1 = 0; g1 < n; ++g1) {
      const int g01 = g.mul(g0, g1);
      for (int g2 = 0; g2 < n; ++g2) {
        const int g12 = g.mul(g1, g2);
        const QZ part = a(g0, g1, g2);
        for (int g3 = 0; g3 < n; ++g3) {
          const QZ s = a(g1, g2, g3) + a(g0, g12, g3) + part - a(g01, g2, g3) -
                       a(g0, g1, g.mul(g2, g3));
          if (!s.is_zero()) return {false, {g0, g1, g2, g3}};
        }
      }
    }
  return {};
}

bool check_normalized(const Cochain3& a) {
  const int n = a.group->order(), e = a.group->identity();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (!a(e, x, y).is_zero() || !a(x, e, y).is_zero() || !a(x, y, e).is_zero()) return false;
  return true;
}

bool check_normalized(const Cochain2& t) {
  const int n = t.size(), e = t.group().identity();
  for (int x = 0; x < n; ++x)
    if (!t(e, x).is_zero() || !t(x, e).is_zero()) return false;
  return true;
}

Cocycle2Report check_cocycle2(const Cochain2& t) {
  const FiniteGroup& g = t.group();
  const int n = t.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const QZ s = t(b, c) - t(g.mul(a, b), c) + t(a, g.mul(b, c)) - t(a, b);
        if (!s.is_zero()) return {false, {a, b, c}};
      }
  return {};
}

Cochain3 coboundary3(const Cochain2& beta) {
  const FiniteGroup& g = beta.group();
  if (beta.carrier.group != beta.carrier.ambient)
    throw InputError("coboundary3 needs a cochain on the whole group");
  Cochain3 out = Cochain3::zero(beta.carrier.group);
  const int n = g.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        out.at(a, b, c) = beta(b, c) - beta(g.mul(a, b), c) + beta(a, g.mul(b, c)) - beta(a, b);
  return out;
}

Cochain2 coboundary2(const Subgroup& h, const std::vector<QZ>& f) {
  Cochain2 out = Cochain2::zero(h);
  const FiniteGroup& g = *h.group;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) out.at(a, b) = f[b] - f[g.mul(a, b)] + f[a];
  return out;
}

Cochain3 cyclic_cocycle(int n, int k) {
  if (n < 1 || k < 0 || k >= n) throw InputError("cyclic cocycle needs n >= 1 and 0 <= k < n");
  Cochain3 a = Cochain3::zero(share(cyclic_group(n)));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        a.at(x, y, z) = QZ(static_cast<std::int64_t>(k) * x * ((y + z) / n), n);
  if (!check_normalized(a) || !check_cocycle3(a).ok)
    throw InternalError("cyclic cocycle failed its own check");
  return a;
}

Cochain3 triple_product_cocycle(GroupPtr g, const std::vector<int>& orders, int i, int j, int k) {
  const int r = static_cast<int>(orders.size());
  if (i < 0 || j < 0 || k < 0 || i >= r || j >= r || k >= r)
    throw InputError("triple cocycle factor index out of range");
  int total = 1;
  for (int o : orders) total *= o;
  if (total != g->order()) throw InputError("factor orders do not match group order");
  const int m = std::gcd(std::gcd(orders[i], orders[j]), orders[k]);
  auto digit = [&](int x, int f) {
    for (int t = r - 1; t > f; --t) x /= orders[t];
    return x % orders[f];
  };
  Cochain3 a = Cochain3::zero(g);
  const int n = g->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        a.at(x, y, z) =
            QZ(static_cast<std::int64_t>(digit(x, i)) * digit(y, j) * digit(z, k), m);
  return a;
}

Cochain2 transgress_on(const Cochain3& a, int x, const Subgroup& carrier) {
  for (int s : carrier.embedding)
    if (!a.group->commute(s, x)) throw InputError("carrier does not centralize the element");
  Cochain2 out = Cochain2::zero(carrier);
  const int n = carrier.order();
  for (int i = 0; i < n; ++i) {
    const int g = carrier.to_ambient(i);
    for (int j = 0; j < n; ++j) {
      const int h = carrier.to_ambient(j);
      out.at(i, j) = a(g, h, x) + a(x, g, h) - a(g, x, h);
    }
  }
  return out;
}

Cochain2 transgress_unchecked(const Cochain3& a, int x) {
  return transgress_on(a, x, centralizer_subgroup(a.group, {x}));
}

Cochain2 transgress(const Cochain3& a, int x) {
  if (!check_normalized(a)) throw InputError("cocycle is not normalized");
  const auto rep = check_cocycle3(a);
  if (!rep.ok) throw InputError("cochain is not a 3-cocycle");
  return transgress_unchecked(a, x);
}

QZ groupoid_cocycle(const Cochain3& a, int x, int g, int h) {
  const FiniteGroup& G = *a.group;
  return a(g, h, G.conj(x, G.mul(g, h))) + a(x, g, h) - a(g, G.conj(x, g), h);
}

QZ transport_phase(const Cochain3& a, int x, int v, int t) {
  const FiniteGroup& G = *a.group;
  const int tp = G.mul(G.mul(v, t), G.inv(v));
  return groupoid_cocycle(a, x, v, t) - groupoid_cocycle(a, x, tp, v);
}

QZ gro_phase(const Cochain3& a, int g1, int g2, int h) {
  return a(g2, h, g1) + a(h, g1, g2) + a(g1, g2, h) - a(h, g2, g1) - a(g1, h, g2) -
         a(g2, g1, h);
}

QZCharacter gro_character(const Cochain3& a, int g1, int g2) {
  if (!a.group->commute(g1, g2)) throw InputError("pair does not commute");
  QZCharacter chi;
  chi.elements = centralizer(*a.group, {g1, g2});
  for (int h : chi.elements) chi.values.push_back(gro_phase(a, g1, g2, h));
  return chi;
}

bool is_homomorphism(const FiniteGroup& g, const QZCharacter& chi) {
  for (std::size_t i = 0; i < chi.elements.size(); ++i)
    for (std::size_t j = 0; j < chi.elements.size(); ++j) {
      const int p = g.mul(chi.elements[i], chi.elements[j]);
      if (!std::binary_search(chi.elements.begin(), chi.elements.end(), p)) return false;
      if (chi.at(p) != chi.values[i] + chi.values[j]) return false;
    }
  return true;
}

namespace {

std::int64_t lcm_of_dens(const std::vector<QZ>& v) {
  std::int64_t l = 1;
  for (QZ x : v) l = std::lcm(l, x.den());
  return l;
}

}  // namespace

std::int64_t value_order(const Cochain2& c) { return lcm_of_dens(c.values); }
std::int64_t value_order(const Cochain3& c) { return lcm_of_dens(c.values); }

Cochain3 pullback_cochain(const GroupHom& f, const Cochain3& a) {
  if (f.codomain->order() != a.group->order())
    throw InputError("cochain does not live on the codomain");
  Cochain3 out = Cochain3::zero(f.domain);
  const int n = f.domain->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) out.at(x, y, z) = a(f(x), f(y), f(z));
  return out;
}

Cochain2 pullback_cochain(const GroupHom& f, const Cochain2& c) {
  if (f.codomain->order() != c.carrier.ambient->order())
    throw InputError("cochain does not live on the codomain");
  for (int v : f.image)
    if (!c.carrier.contains(v)) throw InputError("image not contained in carrier");
  Cochain2 out = Cochain2::zero(f.domain);
  const int n = f.domain->order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) out.at(x, y) = c.ambient(f(x), f(y));
  return out;
}

GroupHom restrict_domain(const GroupHom& f, const Subgroup& s) {
  std::vector<int> im;
  im.reserve(s.order());
  for (int e : s.embedding) im.push_back(f(e));
  return GroupHom{s.group, f.codomain, std::move(im)};
}

Cochain2 restrict_cochain(const Cochain2& c, const Subgroup& h) {
  Cochain2 out = Cochain2::zero(h);
  for (int i = 0; i < h.order(); ++i) {
    if (!c.carrier.contains(h.to_ambient(i))) throw InputError("subgroup not inside carrier");
    for (int j = 0; j < h.order(); ++j) out.at(i, j) = c.ambient(h.to_ambient(i), h.to_ambient(j));
  }
  return out;
}

Cochain2 localize(const Cochain2& c) { return Cochain2{whole_group(c.carrier.group), c.values}; }

Cochain3 operator+(const Cochain3& a, const Cochain3& b) {
  if (a.group->order() != b.group->order()) throw InputError("cochains on different groups");
  Cochain3 out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

Cochain2 operator+(const Cochain2& a, const Cochain2& b) {
  if (a.carrier.embedding != b.carrier.embedding) throw InputError("cochains on different carriers");
  Cochain2 out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

Cochain2 operator-(const Cochain2& a, const Cochain2& b) {
  if (a.carrier.embedding != b.carrier.embedding) throw InputError("cochains on different carriers");
  Cochain2 out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

std::optional<std::vector<QZ>> find_primitive(const Cochain2& delta) {
  const FiniteGroup& g = delta.group();
  const int n = g.order(), e = g.identity();
  const std::vector<int> gens = generating_set(g);

  // f(e) is forced to delta(e,e); each generator value is pinned down to
  // the o-th roots of o f(s) = f(e) + sum_{j=1}^{o-1} delta(s^j, s).
  const QZ fe = delta(e, e);
  std::vector<std::vector<QZ>> candidates;
  for (int s : gens) {
    const int o = g.element_order(s);
    QZ rhs = fe;
    for (int j = 1, p = s; j < o; ++j, p = g.mul(p, s)) rhs += delta(p, s);
    std::vector<QZ> c;
    for (int t = 0; t < o; ++t) c.emplace_back(rhs.num() + t * rhs.den(), rhs.den() * o);
    candidates.push_back(std::move(c));
  }

  std::vector<std::size_t> pick(gens.size(), 0);
  std::vector<QZ> f(n);
  std::vector<char> known(n);
  std::vector<int> queue;
  while (true) {
    std::fill(known.begin(), known.end(), 0);
    queue.assign(1, e);
    f[e] = fe;
    known[e] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int x = queue[q];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int y = g.mul(x, gens[i]);
        if (known[y]) continue;
        known[y] = 1;
        f[y] = f[x] + candidates[i][pick[i]] - delta(x, gens[i]);
        queue.push_back(y);
      }
    }
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        ok = (f[b] - f[g.mul(a, b)] + f[a]) == delta(a, b);
    if (ok) return f;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == candidates[i].size()) pick[i++] = 0;
    if (i == pick.size()) return std::nullopt;
  }
}

Cochain2 random_normalized_cochain2(const GroupPtr& g, int den, std::mt19937_64& rng) {
  Cochain2 out = Cochain2::zero(g);
  std::uniform_int_distribution<int> pick(0, den - 1);
  const int e = g->identity();
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      if (a != e && b != e) out.at(a, b) = QZ(pick(rng), den);
  return out;
}

}  // namespace qell
