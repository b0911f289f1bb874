#include "qell/cyclotomic.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qell/finite_group.hpp"

namespace qell {

int euler_phi(int n) {
  int r = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

namespace {

std::mutex cache_mutex;

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // both monic, constant term first
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const std::vector<long>& phi_poly_locked(int n, std::map<int, std::vector<long>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_exact(p, phi_poly_locked(d, cache));
  return cache.emplace(n, std::move(p)).first->second;
}

std::map<int, std::vector<long>>& phi_cache() {
  static std::map<int, std::vector<long>> c;
  return c;
}

// Reduce a length-l exponent vector modulo Phi_l; result has length phi(l).
std::vector<mpq_class> reduce_mod_phi(int l, std::vector<mpq_class> raw) {
  const std::vector<long>& phi = cyclotomic_polynomial(l);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = raw.size(); i-- > deg;) {
    if (raw[i] == 0) continue;
    const mpq_class c = raw[i];
    for (std::size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0) raw[i - deg + j] -= c * phi[j];
  }
  raw.resize(deg);
  return raw;
}

// Linear data for recognising elements of Q(zeta_m) inside Q(zeta_l).
struct Subfield {
  std::vector<std::vector<mpq_class>> columns;  // phi(m) columns of length phi(l)
  std::vector<int> pivots;                      // phi(m) rows of the system
  std::vector<std::vector<mpq_class>> inverse;  // inverse of the pivot block
};

Subfield build_subfield(int l, int m) {
  const int fl = euler_phi(l), fm = euler_phi(m);
  Subfield s;
  for (int i = 0; i < fm; ++i) {
    std::vector<mpq_class> raw(l, 0);
    raw[(static_cast<long>(i) * (l / m)) % l] = 1;
    s.columns.push_back(reduce_mod_phi(l, raw));
  }
  // Choose independent rows by elimination on the transposed system.
  std::vector<std::vector<mpq_class>> rows(fl, std::vector<mpq_class>(fm));
  for (int r = 0; r < fl; ++r)
    for (int c = 0; c < fm; ++c) rows[r][c] = s.columns[c][r];
  std::vector<std::vector<mpq_class>> basis;
  std::vector<int> lead;
  for (int r = 0; r < fl && static_cast<int>(s.pivots.size()) < fm; ++r) {
    std::vector<mpq_class> v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (v[lead[b]] != 0) {
        const mpq_class f = v[lead[b]];
        for (int c = 0; c < fm; ++c) v[c] -= f * basis[b][c];
      }
    int piv = -1;
    for (int c = 0; c < fm; ++c)
      if (v[c] != 0) {
        piv = c;
        break;
      }
    if (piv < 0) continue;
    const mpq_class f = v[piv];
    for (int c = 0; c < fm; ++c) v[c] /= f;
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (basis[b][piv] != 0) {
        const mpq_class g = basis[b][piv];
        for (int c = 0; c < fm; ++c) basis[b][c] -= g * v[c];
      }
    basis.push_back(v);
    lead.push_back(piv);
    s.pivots.push_back(r);
  }
  if (static_cast<int>(s.pivots.size()) != fm) throw InternalError("subfield embedding is not injective");
  // Invert the pivot block by Gauss-Jordan.
  std::vector<std::vector<mpq_class>> a(fm, std::vector<mpq_class>(2 * fm, 0));
  for (int i = 0; i < fm; ++i) {
    for (int c = 0; c < fm; ++c) a[i][c] = rows[s.pivots[i]][c];
    a[i][fm + i] = 1;
  }
  for (int c = 0; c < fm; ++c) {
    int r = c;
    while (a[r][c] == 0) ++r;
    std::swap(a[r], a[c]);
    const mpq_class f = a[c][c];
    for (auto& x : a[c]) x /= f;
    for (int i = 0; i < fm; ++i)
      if (i != c && a[i][c] != 0) {
        const mpq_class g = a[i][c];
        for (int k = 0; k < 2 * fm; ++k) a[i][k] -= g * a[c][k];
      }
  }
  s.inverse.assign(fm, std::vector<mpq_class>(fm));
  for (int i = 0; i < fm; ++i)
    for (int j = 0; j < fm; ++j) s.inverse[i][j] = a[i][fm + j];
  return s;
}

const Subfield& subfield(int l, int m) {
  static std::map<std::pair<int, int>, Subfield> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find({l, m});
    if (it != cache.end()) return it->second;
  }
  Subfield s = build_subfield(l, m);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(std::make_pair(l, m), std::move(s)).first->second;
}

bool try_descend(int l, int m, const std::vector<mpq_class>& v, std::vector<mpq_class>& out) {
  const Subfield& s = subfield(l, m);
  const std::size_t fm = s.pivots.size();
  std::vector<mpq_class> b(fm, 0);
  for (std::size_t i = 0; i < fm; ++i)
    for (std::size_t j = 0; j < fm; ++j)
      if (s.inverse[i][j] != 0 && v[s.pivots[j]] != 0) b[i] += s.inverse[i][j] * v[s.pivots[j]];
  for (std::size_t r = 0; r < v.size(); ++r) {
    mpq_class acc = 0;
    for (std::size_t c = 0; c < fm; ++c)
      if (b[c] != 0) acc += s.columns[c][r] * b[c];
    if (acc != v[r]) return false;
  }
  out = std::move(b);
  return true;
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> ps;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  return phi_poly_locked(n, phi_cache());
}

Cyclotomic Cyclotomic::from_raw(int l, std::vector<mpq_class> raw) {
  std::vector<mpq_class> v = reduce_mod_phi(l, std::move(raw));
  bool progress = true;
  while (progress && l > 1) {
    progress = false;
    for (int p : prime_divisors(l)) {
      std::vector<mpq_class> w;
      if (try_descend(l, l / p, v, w)) {
        l /= p;
        v = std::move(w);
        progress = true;
        break;
      }
    }
  }
  return Cyclotomic(l, std::move(v));
}

std::vector<mpq_class> Cyclotomic::lift(int l) const {
  std::vector<mpq_class> raw(l, 0);
  const int step = l / m_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) raw[i * step] = coeffs_[i];
  return raw;
}

Cyclotomic Cyclotomic::root(int m, long k) {
  if (m < 1) throw InputError("root of unity needs a positive order");
  std::vector<mpq_class> raw(m, 0);
  raw[((k % m) + m) % m] = 1;
  return from_raw(m, std::move(raw));
}

Cyclotomic Cyclotomic::from_exponents(int m, const std::map<long, mpq_class>& terms) {
  if (m < 1) throw InputError("cyclotomic modulus must be positive");
  std::vector<mpq_class> raw(m, 0);
  for (const auto& [k, c] : terms) raw[((k % m) + m) % m] += c;
  return from_raw(m, std::move(raw));
}

bool Cyclotomic::is_zero() const { return m_ == 1 && coeffs_[0] == 0; }

mpq_class Cyclotomic::rational() const {
  if (m_ != 1) throw InternalError("cyclotomic value is not rational");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::scaled(const mpq_class& f) const {
  if (f == 0) return Cyclotomic();
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c *= f;
  return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ == b.m_) {
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    if (r.m_ == 1) return r;
    return Cyclotomic::from_raw(r.m_, r.lift(r.m_));
  }
  const int l = std::lcm(a.m_, b.m_);
  std::vector<mpq_class> x = a.lift(l), y = b.lift(l);
  for (int i = 0; i < l; ++i) x[i] += y[i];
  return Cyclotomic::from_raw(l, std::move(x));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ == 1) return b.scaled(a.coeffs_[0]);
  if (b.m_ == 1) return a.scaled(b.coeffs_[0]);
  const int l = std::lcm(a.m_, b.m_);
  const std::vector<mpq_class> x = a.lift(l), y = b.lift(l);
  std::vector<mpq_class> z(l, 0);
  for (int i = 0; i < l; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < l; ++j)
      if (y[j] != 0) z[(i + j) % l] += x[i] * y[j];
  }
  return Cyclotomic::from_raw(l, std::move(z));
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (m_ == 1) return *this;
  if (std::gcd(((k % m_) + m_) % m_, static_cast<long>(m_)) != 1)
    throw InputError("Galois exponent not coprime to modulus");
  std::vector<mpq_class> raw(m_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const long e = ((static_cast<long>(i) * k) % m_ + m_) % m_;
    raw[e] += coeffs_[i];
  }
  return from_raw(m_, std::move(raw));
}

std::complex<double> Cyclotomic::eval_numeric() const {
  std::complex<double> s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const double ang = 2.0 * M_PI * static_cast<double>(i) / m_;
    s += coeffs_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

bool canonical_less(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.m_ != b.m_) return a.m_ < b.m_;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

std::string Cyclotomic::str() const {
  if (m_ == 1) return coeffs_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << coeffs_[i].get_str();
    } else {
      if (coeffs_[i] != 1) os << coeffs_[i].get_str() << "*";
      os << "E(" << m_ << ")^" << i;
    }
  }
  return os.str();
}

}  // namespace qell
