#include "qell/devoto.hpp"

#include <cmath>
#include <numeric>
#include <tuple>

namespace qell {

Coset Coset::of(long c, long d) {
  if (std::gcd(c, d) != 1) throw InputError("coset bottom row is not coprime");
  if (c == 0) return {0, 1};
  if (c < 0) return {-c, -d};
  return {c, d};
}

SL2Matrix Coset::matrix() const {
  // extended Euclid: c x + d y = 1
  long r0 = c, r1 = d, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (r0 < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  return SL2Matrix::make(y0, -x0, c, d);
}

EllFunction EllFunction::constant(const Cyclotomic& v) {
  EllFunction f;
  f.add_term({0, 1}, 0, v);
  return f;
}

EllFunction EllFunction::monomial(long n, const Cyclotomic& coeff) {
  EllFunction f;
  f.add_term({0, 1}, n, coeff);
  return f;
}

void EllFunction::add_term(Coset coset, long n, const Cyclotomic& coeff) {
  if (coeff.is_zero()) return;
  if (n == 0) coset = {0, 1};
  const auto key = std::make_pair(coset, n);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) terms.erase(it);
}

EllFunction EllFunction::scaled(const Cyclotomic& s) const {
  EllFunction out;
  for (const auto& [k, v] : terms) out.add_term(k.first, k.second, v * s);
  return out;
}

EllFunction operator+(const EllFunction& a, const EllFunction& b) {
  EllFunction out = a;
  for (const auto& [k, v] : b.terms) out.add_term(k.first, k.second, v);
  return out;
}

EllFunction ell_normalize(const std::vector<RawEllTerm>& raw) {
  EllFunction out;
  for (const auto& t : raw) {
    const SL2Matrix& m = t.matrix;
    if (m.a * m.d - m.b * m.c != 1) throw InputError("matrix is not in SL2(Z)");
    out.add_term(Coset::of(m), t.n, t.coeff);
  }
  return out;
}

EllFunction ell_sl2_act(const SL2Matrix& a, const EllFunction& f) {
  EllFunction out;
  for (const auto& [k, v] : f.terms) {
    const Coset& b = k.first;
    out.add_term(Coset::of(b.c * a.a + b.d * a.c, b.c * a.b + b.d * a.d), k.second, v);
  }
  return out;
}

std::complex<double> ell_eval(const EllFunction& f, std::complex<double> t1, std::complex<double> t2) {
  if (std::abs(t2) == 0.0) throw InputError("point outside the lattice space");
  const std::complex<double> tau = t1 / t2;
  if (!(tau.imag() > 0)) throw InputError("point outside the lattice space");
  std::complex<double> s = 0;
  const std::complex<double> two_pi_i(0, 2 * M_PI);
  for (const auto& [k, v] : f.terms) {
    const SL2Matrix m = k.first.matrix();
    const std::complex<double> w = (static_cast<double>(m.a) * tau + static_cast<double>(m.b)) /
                                   (static_cast<double>(m.c) * tau + static_cast<double>(m.d));
    s += v.eval_numeric() * std::exp(two_pi_i * static_cast<double>(k.second) * w);
  }
  return s;
}

bool ell_equal(const EllFunction& a, const EllFunction& b) { return a.terms == b.terms; }

EllClass EllClass::zero(GroupPtr g, GSet x, std::optional<Cochain3> alpha) {
  EllClass c;
  for (const auto& p : commuting_pairs(*g)) {
    auto& comp = c.components[p];
    for (int pt : fixed_points(x, {p.g, p.h}).points) comp[pt] = EllFunction();
  }
  c.group = std::move(g);
  c.gset = std::move(x);
  c.alpha = std::move(alpha);
  return c;
}

EllClass EllClass::constant(GroupPtr g, GSet x, const Cyclotomic& v) {
  EllClass c = zero(std::move(g), std::move(x), std::nullopt);
  for (auto& [p, comp] : c.components)
    for (auto& [pt, f] : comp) f = EllFunction::constant(v);
  return c;
}

const EllFunction& EllClass::at(CommutingPair p, int point) const {
  const auto it = components.find(p);
  if (it == components.end()) throw InputError("not a commuting pair");
  const auto jt = it->second.find(point);
  if (jt == it->second.end()) throw InputError("point not fixed by the pair");
  return jt->second;
}

EllFunction& EllClass::at(CommutingPair p, int point) {
  return const_cast<EllFunction&>(static_cast<const EllClass&>(*this).at(p, point));
}

bool ell_equal(const EllClass& a, const EllClass& b) {
  if (a.components.size() != b.components.size()) return false;
  for (const auto& [p, comp] : a.components) {
    const auto it = b.components.find(p);
    if (it == b.components.end() || it->second.size() != comp.size()) return false;
    for (const auto& [pt, f] : comp) {
      const auto jt = it->second.find(pt);
      if (jt == it->second.end() || !ell_equal(f, jt->second)) return false;
    }
  }
  return true;
}

EllClass class_sl2_act(const SL2Matrix& a, const EllClass& f) {
  EllClass out = f;
  const SL2Matrix ainv = a.inverse();
  out.lines.clear();
  for (auto& [p, comp] : out.components) {
    const CommutingPair q = sl2_act_pair(*f.group, a, p);
    const auto& src = f.components.at(q);
    for (auto& [pt, fn] : comp) fn = ell_sl2_act(ainv, src.at(pt));
    const auto lt = f.lines.find(q);
    if (lt != f.lines.end()) out.lines[p] = lt->second;
  }
  return out;
}

EllClass class_group_act(int k, const EllClass& f) {
  const FiniteGroup& G = *f.group;
  EllClass out = f;
  out.lines.clear();
  for (const auto& [p, comp] : f.components) {
    const CommutingPair q = conj_pair(G, p, k);
    Cyclotomic scalar(1);
    if (f.alpha) scalar = Cyclotomic::exp2pi(gro_phase(*f.alpha, p.g, p.h, k));
    auto& dst = out.components.at(q);
    for (const auto& [pt, fn] : comp) dst.at(f.gset.act(pt, k)) = fn.scaled(scalar);
    const auto lt = f.lines.find(p);
    if (lt != f.lines.end()) {
      QZCharacter moved;
      moved.elements = centralizer(G, {q.g, q.h});
      for (int h : moved.elements) moved.values.push_back(lt->second.at(G.mul(G.mul(k, h), G.inv(k))));
      out.lines[q] = std::move(moved);
    }
  }
  return out;
}

QZ group_act_defect(const Cochain3& alpha, CommutingPair p, int k, int k2) {
  const FiniteGroup& G = *alpha.group;
  const CommutingPair q = conj_pair(G, p, k);
  return gro_phase(alpha, p.g, p.h, k) + gro_phase(alpha, q.g, q.h, k2) -
         gro_phase(alpha, p.g, p.h, G.mul(k, k2));
}

InvariantRankReport invariant_rank_pt(const GroupPtr& g, const std::optional<Cochain3>& alpha) {
  if (alpha) {
    if (!check_normalized(*alpha)) throw InputError("cocycle is not normalized");
    if (!check_cocycle3(*alpha).ok) throw InputError("cochain is not a 3-cocycle");
  }
  InvariantRankReport r;
  for (const auto& orb : pair_orbits(*g, PairAction::conjugation)) {
    InvariantRankEntry e;
    e.representative = orb.representative;
    e.orbit_size = static_cast<int>(orb.members.size());
    auto vanishes = [&](CommutingPair p) {
      return !alpha || gro_character(*alpha, p.g, p.h).is_zero();
    };
    const bool v = vanishes(orb.representative);
    for (const auto& m : orb.members)
      if (vanishes(m) != v) throw InternalError("twist character vanishing is not conjugation invariant");
    e.rank = v ? 1 : 0;
    r.total += e.rank;
    r.orbits.push_back(e);
  }
  return r;
}

}  // namespace qell
