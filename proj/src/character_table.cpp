#include "qell/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

namespace qell {

namespace {

using i64 = std::int64_t;

i64 pmod(i64 a, i64 p) {
  a %= p;
  return a < 0 ? a + p : a;
}

i64 powmod(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b = pmod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 p) { return powmod(a, p - 2, p); }

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr i64 kPrimeBound = 1 << 20;

i64 choose_prime(int exponent, int order) {
  const double floor_value = 2.0 * std::sqrt(static_cast<double>(order));
  for (i64 p = exponent + 1; p < kPrimeBound; p += exponent)
    if (p > floor_value && is_prime(p)) return p;
  throw InputError("no suitable prime below 2^20 for the character table");
}

i64 primitive_root_of_order(i64 e, i64 p) {
  std::vector<i64> factors;
  i64 n = p - 1;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (i64 g = 2; g < p; ++g) {
    bool gen = true;
    for (i64 f : factors)
      if (powmod(g, (p - 1) / f, p) == 1) {
        gen = false;
        break;
      }
    if (gen) return powmod(g, (p - 1) / e, p);
  }
  throw InternalError("no primitive root");
}

using Mat = std::vector<std::vector<i64>>;  // row-major

// Basis of the null space of an r x d matrix over F_p.
std::vector<std::vector<i64>> null_space(Mat a, i64 p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t s = r;
    while (s < rows && a[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(a[s], a[r]);
    const i64 inv = invmod(a[r][c], p);
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && a[i][c] != 0) {
        const i64 f = a[i][c];
        for (std::size_t k = 0; k < cols; ++k) a[i][k] = pmod(a[i][k] - f * a[r][k], p);
      }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<i64>> out;
  std::vector<char> is_pivot(cols, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<i64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = pmod(-a[i][f], p);
    out.push_back(std::move(v));
  }
  return out;
}

// Columns of `basis` are vectors of length r.
using Space = std::vector<std::vector<i64>>;

std::vector<i64> mat_vec(const Mat& m, const std::vector<i64>& v, i64 p) {
  std::vector<i64> out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    i64 s = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (m[i][k] && v[k]) s = (s + m[i][k] * v[k]) % p;
    out[i] = s;
  }
  return out;
}

// Roots in F_p of the minimal polynomial of a pseudo-random vector of the
// (m-stable) span of `basis`.
std::vector<i64> candidate_eigenvalues(const Mat& m, const Space& basis, i64 p) {
  const std::size_t r = m.size(), d = basis.size();
  std::mt19937_64 rng(0x5eed + d);
  std::vector<i64> v(r, 0);
  for (const auto& b : basis) {
    const i64 c = static_cast<i64>(rng() % static_cast<std::uint64_t>(p - 1)) + 1;
    for (std::size_t i = 0; i < r; ++i) v[i] = (v[i] + c * b[i]) % p;
  }
  // Incremental elimination of v, mv, m^2 v, ... tracking each reduced
  // vector as a polynomial in m.
  std::vector<std::vector<i64>> rows, polys;
  std::vector<std::size_t> pivots;
  std::vector<i64> poly;
  std::vector<i64> k = v;
  for (std::size_t n = 0; n <= d; ++n) {
    std::vector<i64> w = k;
    std::vector<i64> c(n + 1, 0);
    c[n] = 1;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const i64 f = w[pivots[j]];
      if (!f) continue;
      for (std::size_t i = 0; i < r; ++i) w[i] = pmod(w[i] - f * rows[j][i], p);
      for (std::size_t i = 0; i < polys[j].size(); ++i) c[i] = pmod(c[i] - f * polys[j][i], p);
    }
    std::size_t piv = 0;
    while (piv < r && w[piv] == 0) ++piv;
    if (piv == r) {
      poly = std::move(c);
      break;
    }
    const i64 inv = invmod(w[piv], p);
    for (auto& x : w) x = x * inv % p;
    for (auto& x : c) x = x * inv % p;
    rows.push_back(std::move(w));
    polys.push_back(std::move(c));
    pivots.push_back(piv);
    k = mat_vec(m, k, p);
  }
  std::vector<i64> roots;
  if (poly.empty()) return roots;
  for (i64 lambda = 0; lambda < p; ++lambda) {
    i64 acc = 0;
    for (std::size_t i = poly.size(); i-- > 0;) acc = (acc * lambda + poly[i]) % p;
    if (acc == 0) roots.push_back(lambda);
  }
  return roots;
}

std::vector<Space> split(const Mat& m, const Space& basis, i64 p) {
  const std::size_t r = m.size(), d = basis.size();
  Mat mb(r, std::vector<i64>(d, 0));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < r; ++i) {
      i64 s = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (m[i][k]) s += m[i][k] * basis[j][k] % p;
      mb[i][j] = s % p;
    }
  std::vector<Space> parts;
  std::size_t found = 0;
  auto eigenspace = [&](i64 lambda) {
    Mat a = mb;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < d; ++j) a[i][j] = pmod(a[i][j] - lambda * basis[j][i], p);
    const auto ker = null_space(a, p);
    if (ker.empty()) return;
    Space w;
    for (const auto& c : ker) {
      std::vector<i64> v(r, 0);
      for (std::size_t j = 0; j < d; ++j)
        if (c[j])
          for (std::size_t i = 0; i < r; ++i) v[i] = (v[i] + c[j] * basis[j][i]) % p;
      w.push_back(std::move(v));
    }
    found += w.size();
    parts.push_back(std::move(w));
  };
  for (i64 lambda : candidate_eigenvalues(m, basis, p)) eigenspace(lambda);
  if (found != d) {
    // the random vector missed an eigenspace: full scan
    parts.clear();
    found = 0;
    for (i64 lambda = 0; lambda < p && found < d; ++lambda) eigenspace(lambda);
  }
  if (found != d) throw InternalError("class matrix is not diagonalizable over F_p");
  return parts;
}

struct RowKey {
  double arg;
  double modulus;
};

RowKey numeric_key(const Cyclotomic& v) {
  const auto z = v.eval_numeric();
  const double mod = std::abs(z);
  if (mod < 1e-9) return {-1.0, 0.0};
  double a = std::arg(z);
  if (a < 0) a += 2 * M_PI;
  if (a > 2 * M_PI - 1e-9) a = 0;
  return {a, mod};
}

bool row_less(const std::vector<Cyclotomic>& x, int dx, const std::vector<Cyclotomic>& y, int dy) {
  if (dx != dy) return dx < dy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == y[i]) continue;
    const RowKey a = numeric_key(x[i]), b = numeric_key(y[i]);
    if (std::abs(a.arg - b.arg) > 1e-9) return a.arg < b.arg;
    if (std::abs(a.modulus - b.modulus) > 1e-9) return a.modulus < b.modulus;
    return canonical_less(x[i], y[i]);
  }
  return false;
}

// Linear characters of an abelian group as maps to Z/e, extended one
// generator at a time.
std::vector<std::vector<int>> abelian_homs(const FiniteGroup& g, int e) {
  const int n = g.order();
  std::vector<int> members{g.identity()};
  std::vector<char> in(n, 0);
  in[g.identity()] = 1;
  std::vector<std::vector<int>> homs{std::vector<int>(n, 0)};
  for (int x : generating_set(g)) {
    if (in[x]) continue;
    int m = 1, y = x;
    while (!in[y]) {
      y = g.mul(y, x);
      ++m;
    }
    std::vector<int> grown;
    for (int j = 0, xj = g.identity(); j < m; ++j, xj = g.mul(xj, x))
      for (int h : members) grown.push_back(g.mul(xj, h));
    std::vector<std::vector<int>> next;
    for (const auto& chi : homs)
      for (int v = 0; v < e; ++v) {
        if ((static_cast<long>(m) * v - chi[y]) % e != 0) continue;
        std::vector<int> ext = chi;
        for (int j = 0, xj = g.identity(); j < m; ++j, xj = g.mul(xj, x))
          for (int h : members) ext[g.mul(xj, h)] = (j * v + chi[h]) % e;
        next.push_back(std::move(ext));
      }
    homs = std::move(next);
    members = std::move(grown);
    for (int h : members) in[h] = 1;
  }
  return homs;
}

void sort_rows(CharacterTable& t) {
  const int r = static_cast<int>(t.rows.size());
  std::vector<int> perm(r);
  for (int i = 0; i < r; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    return row_less(t.rows[a], t.degrees[a], t.rows[b], t.degrees[b]);
  });
  const CharacterTable old = t;
  for (int i = 0; i < r; ++i) {
    t.rows[i] = old.rows[perm[i]];
    t.degrees[i] = old.degrees[perm[i]];
  }
}

template <class Keep>
CharacterTable abelian_table(const GroupPtr& gp, Keep keep) {
  const FiniteGroup& g = *gp;
  CharacterTable t;
  t.group = gp;
  t.classes = conjugacy_classes(g);
  t.class_of = class_index(g, t.classes);
  const int e = g.exponent();
  std::vector<Cyclotomic> roots;
  for (int k = 0; k < e; ++k) roots.push_back(Cyclotomic::root(e, k));
  const auto homs = abelian_homs(g, e);
  if (static_cast<int>(homs.size()) != g.order()) throw InternalError("abelian character count mismatch");
  for (const auto& chi : homs) {
    if (!keep(chi, e)) continue;
    std::vector<Cyclotomic> row;
    row.reserve(t.classes.size());
    for (const auto& c : t.classes) row.push_back(roots[chi[c.representative]]);
    t.rows.push_back(std::move(row));
    t.degrees.push_back(1);
  }
  sort_rows(t);
  return t;
}

CharacterTable compute_table(const GroupPtr& gp) {
  const FiniteGroup& g = *gp;
  CharacterTable t;
  t.group = gp;
  t.classes = conjugacy_classes(g);
  t.class_of = class_index(g, t.classes);
  const int r = static_cast<int>(t.classes.size());
  const int order = g.order();
  const int e = g.exponent();
  if (g.is_abelian()) return abelian_table(gp, [](const std::vector<int>&, int) { return true; });

  const i64 p = choose_prime(e, order);
  const i64 z = primitive_root_of_order(e, p);

  std::vector<Mat> mats(r, Mat(r, std::vector<i64>(r, 0)));
  for (int j = 0; j < r; ++j)
    for (int l = 0; l < r; ++l) {
      const int zl = t.classes[l].representative;
      for (int x : t.classes[j].members) ++mats[j][t.class_of[g.mul(g.inv(x), zl)]][l];
    }

  Space all;
  for (int i = 0; i < r; ++i) {
    std::vector<i64> v(r, 0);
    v[i] = 1;
    all.push_back(std::move(v));
  }
  std::vector<Space> spaces{all};
  for (int j = 0; j < r; ++j) {
    std::vector<Space> next;
    for (const Space& s : spaces) {
      if (s.size() == 1) {
        next.push_back(s);
        continue;
      }
      for (Space& w : split(mats[j], s, p)) next.push_back(std::move(w));
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != r) throw InternalError("eigenspaces did not separate");

  const int id_class = t.class_of[g.identity()];
  std::vector<int> inv_class(r);
  for (int l = 0; l < r; ++l) inv_class[l] = t.class_of[g.inv(t.classes[l].representative)];

  for (const Space& s : spaces) {
    std::vector<i64> w = s[0];
    if (w[id_class] == 0) throw InternalError("eigenvector vanishes at the identity");
    const i64 f = invmod(w[id_class], p);
    for (auto& x : w) x = x * f % p;
    i64 sum = 0;
    for (int l = 0; l < r; ++l)
      sum = (sum + w[l] * w[inv_class[l]] % p * invmod(static_cast<i64>(t.classes[l].members.size()), p)) % p;
    const i64 d2 = order % p * invmod(sum, p) % p;
    int deg = 0;
    for (int d = 1; d * d <= order; ++d)
      if (static_cast<i64>(d) * d % p == d2) deg = d;
    if (deg == 0) throw InternalError("degree recovery failed");
    std::vector<i64> chi(r);
    for (int l = 0; l < r; ++l)
      chi[l] = w[l] * deg % p * invmod(static_cast<i64>(t.classes[l].members.size()), p) % p;

    std::vector<Cyclotomic> row(r);
    for (int l = 0; l < r; ++l) {
      const int x = t.classes[l].representative;
      const int o = g.element_order(x);
      const i64 zo = powmod(z, e / o, p);
      const i64 inv_o = invmod(o, p);
      std::map<long, mpq_class> terms;
      int total = 0;
      for (int k = 0; k < o; ++k) {
        i64 acc = 0;
        int y = g.identity();
        for (int j = 0; j < o; ++j, y = g.mul(y, x))
          acc = (acc + chi[t.class_of[y]] * powmod(zo, pmod(-static_cast<i64>(j) * k, o), p)) % p;
        const i64 mult = acc * inv_o % p;
        if (mult > deg) throw InternalError("eigenvalue multiplicity out of range");
        if (mult) terms[k] = static_cast<long>(mult);
        total += static_cast<int>(mult);
      }
      if (total != deg) throw InternalError("eigenvalue multiplicities do not sum to the degree");
      row[l] = Cyclotomic::from_exponents(o, terms);
    }
    t.rows.push_back(std::move(row));
    t.degrees.push_back(deg);
  }

  sort_rows(t);
  return t;
}

}  // namespace

std::shared_ptr<const CharacterTable> character_table(const GroupPtr& g) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::shared_ptr<const CharacterTable>> cache;
  std::vector<int> key;
  key.reserve(static_cast<std::size_t>(g->order()) * g->order());
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b) key.push_back(g->mul(a, b));
  std::shared_ptr<const CharacterTable> hit;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) hit = it->second;
  }
  if (!hit) {
    hit = std::make_shared<const CharacterTable>(compute_table(g));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, hit);
  }
  if (hit->group == g) return hit;
  auto copy = std::make_shared<CharacterTable>(*hit);
  copy->group = g;
  return copy;
}

Cyclotomic inner_product(const CharacterTable& t, const std::vector<Cyclotomic>& chi,
                         const std::vector<Cyclotomic>& psi) {
  Cyclotomic s;
  for (std::size_t l = 0; l < t.classes.size(); ++l)
    s += (chi[l] * psi[l].conj()).scaled(mpq_class(static_cast<long>(t.classes[l].members.size())));
  return s.scaled(mpq_class(1, t.group->order()));
}

OrthogonalityReport check_orthogonality(const CharacterTable& t) {
  OrthogonalityReport rep;
  const int r = static_cast<int>(t.classes.size());
  rep.count_ok = t.size() == r;
  long sum = 0;
  for (int d : t.degrees) sum += static_cast<long>(d) * d;
  rep.degree_sum_ok = sum == t.group->order();
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      if (inner_product(t, t.rows[i], t.rows[j]) != Cyclotomic(i == j ? 1 : 0)) rep.rows_ok = false;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Cyclotomic s;
      for (int i = 0; i < t.size(); ++i) s += t.rows[i][a] * t.rows[i][b].conj();
      const long expect =
          a == b ? t.group->order() / static_cast<long>(t.classes[a].members.size()) : 0;
      if (s != Cyclotomic(expect)) rep.columns_ok = false;
    }
  return rep;
}

std::shared_ptr<const CharacterTable> abelian_characters_at(const GroupPtr& g, int z, const QZ& x) {
  if (!g->is_abelian()) throw InputError("group is not abelian");
  return std::make_shared<const CharacterTable>(abelian_table(g, [&](const std::vector<int>& chi, int e) {
    return QZ(chi[z], e) == x;
  }));
}

}  // namespace qell
