#include "qell/qell.hpp"

#include <algorithm>

namespace qell {

GSet GSet::make(GroupPtr g, int size, std::vector<int> action) {
  const int n = g->order();
  if (size < 0) throw InputError("G-set size must be non-negative");
  if (action.size() != static_cast<std::size_t>(size) * n)
    throw InputError("action table has wrong shape");
  for (int v : action)
    if (v < 0 || v >= size) throw InputError("action table entry out of range");
  GSet s{std::move(g), size, std::move(action)};
  const FiniteGroup& G = *s.group;
  for (int x = 0; x < size; ++x) {
    if (s.act(x, G.identity()) != x) throw InputError("identity does not act trivially");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (s.act(s.act(x, a), b) != s.act(x, G.mul(a, b)))
          throw InputError("action is not compatible with multiplication");
  }
  return s;
}

GSet GSet::trivial(GroupPtr g, int n) {
  std::vector<int> act;
  for (int x = 0; x < n; ++x)
    for (int k = 0; k < g->order(); ++k) act.push_back(x);
  return GSet{std::move(g), n, std::move(act)};
}

GSet GSet::regular(GroupPtr g) {
  std::vector<int> act;
  for (int x = 0; x < g->order(); ++x)
    for (int k = 0; k < g->order(); ++k) act.push_back(g->mul(x, k));
  const int n = g->order();
  return GSet{std::move(g), n, std::move(act)};
}

GSet disjoint_union(const GSet& a, const GSet& b) {
  std::vector<int> act = a.action;
  for (int v : b.action) act.push_back(v + a.size);
  return GSet{a.group, a.size + b.size, std::move(act)};
}

FixedSet fixed_points(const GSet& x, const std::vector<int>& elems) {
  FixedSet f;
  f.acting = elems.empty() ? whole_group(x.group) : centralizer_subgroup(x.group, elems);
  for (int p = 0; p < x.size; ++p)
    if (std::all_of(elems.begin(), elems.end(), [&](int g) { return x.act(p, g) == p; }))
      f.points.push_back(p);
  return f;
}

std::vector<Orbit> orbits(const GSet& x, const std::vector<int>& points, const Subgroup& acting) {
  std::vector<Orbit> out;
  std::vector<char> seen(x.size, 0);
  for (int p : points) {
    if (seen[p]) continue;
    Orbit o;
    o.point = p;
    std::vector<int> stab;
    for (int k : acting.embedding) {
      const int q = x.act(p, k);
      if (q == p) stab.push_back(k);
      if (!seen[q]) {
        seen[q] = 1;
        o.members.push_back(q);
      }
    }
    std::sort(o.members.begin(), o.members.end());
    o.stabilizer = make_subgroup(x.group, std::move(stab));
    out.push_back(std::move(o));
  }
  return out;
}

const QEllSector& QEllSpace::sector(int sigma) const {
  for (const auto& s : sectors)
    if (s.sigma == sigma) return s;
  throw InputError("no sector for element " + std::to_string(sigma));
}

const QEllOrbit& QEllSpace::orbit(int sigma, int point) const {
  for (const auto& o : sector(sigma).orbits)
    if (o.orbit.point == point) return o;
  throw InputError("no orbit with representative " + std::to_string(point));
}

const LambdaIrrep& QEllSpace::irrep(const QEllBasisElement& b) const {
  const auto& basis = orbit(b.sigma, b.orbit_point).module.basis;
  if (b.irrep < 0 || b.irrep >= static_cast<int>(basis.size()))
    throw InputError("irreducible index out of range");
  return basis[b.irrep];
}

QEllSpacePtr qell_basis(const GroupPtr& g, const GSet& x, const std::optional<Cochain3>& alpha) {
  if (alpha) {
    if (alpha->group->order() != g->order()) throw InputError("cocycle lives on another group");
    if (!check_normalized(*alpha)) throw InputError("cocycle is not normalized");
    if (!check_cocycle3(*alpha).ok) throw InputError("cochain is not a 3-cocycle");
  }
  auto s = std::make_shared<QEllSpace>();
  s->group = g;
  s->gset = x;
  s->alpha = alpha;
  for (const auto& cls : conjugacy_classes(*g)) {
    QEllSector sec;
    sec.sigma = cls.representative;
    const FixedSet fx = fixed_points(x, {sec.sigma});
    sec.centralizer = fx.acting;
    for (Orbit& o : orbits(x, fx.points, fx.acting)) {
      std::optional<Cochain2> theta;
      if (alpha) theta = transgress_on(*alpha, sec.sigma, o.stabilizer);
      GradedRepModule m = lambda_basis(o.stabilizer, sec.sigma, theta);
      for (int i = 0; i < static_cast<int>(m.basis.size()); ++i)
        s->basis.push_back({sec.sigma, o.point, i, 0});
      sec.orbits.push_back({std::move(o), std::move(m)});
    }
    s->sectors.push_back(std::move(sec));
  }
  return s;
}

std::vector<QZ> RankReport::all_degrees() const {
  std::vector<QZ> out;
  for (const auto& s : sectors)
    for (const auto& [x, k] : s.degrees) out.insert(out.end(), k, x);
  std::sort(out.begin(), out.end());
  return out;
}

RankReport qell_rank_report(const QEllSpace& s) {
  RankReport r;
  for (const auto& sec : s.sectors) {
    RankSector rs;
    rs.sigma = sec.sigma;
    for (const auto& o : sec.orbits)
      for (const auto& l : o.module.basis) {
        ++rs.degrees[l.x];
        ++rs.rank;
      }
    r.total += rs.rank;
    r.sectors.push_back(std::move(rs));
  }
  return r;
}

QEllClass QEllClass::generator(QEllSpacePtr s, const QEllBasisElement& b, long coeff) {
  QEllClass c;
  c.space = std::move(s);
  c.add(b, coeff);
  return c;
}

void QEllClass::add(const QEllBasisElement& b, long coeff) {
  space->irrep(b);  // validates
  const long v = (terms[b] += coeff);
  if (v == 0) terms.erase(b);
}

QEllClass q_multiply(const QEllClass& c, int k) {
  QEllClass out;
  out.space = c.space;
  for (const auto& [b, v] : c.terms) {
    QEllBasisElement s = b;
    s.q_shift += k;
    out.terms[s] = v;
  }
  return out;
}

EquivariantMap EquivariantMap::make(GroupHom f, GSet source, GSet target, std::vector<int> phi) {
  if (source.group->order() != f.domain->order() || target.group->order() != f.codomain->order())
    throw InputError("G-sets do not match the homomorphism");
  if (static_cast<int>(phi.size()) != source.size) throw InputError("point map has wrong length");
  for (int v : phi)
    if (v < 0 || v >= target.size) throw InputError("point map out of range");
  for (int x = 0; x < source.size; ++x)
    for (int g = 0; g < f.domain->order(); ++g)
      if (phi[source.act(x, g)] != target.act(phi[x], f(g)))
        throw InputError("point map is not equivariant");
  return EquivariantMap{std::move(f), std::move(source), std::move(target), std::move(phi)};
}

Cyclotomic fiber_character(const QEllSpace& s, int sigma, const QEllOrbit& o, int irrep, int y,
                           int t) {
  const FiniteGroup& G = *s.group;
  int u = -1;
  for (int k : s.sector(sigma).centralizer.embedding)
    if (s.gset.act(o.orbit.point, k) == y) {
      u = k;
      break;
    }
  if (u < 0) throw InputError("point is not in the orbit");
  const int tp = G.mul(G.mul(u, t), G.inv(u));
  const Subgroup& stab = o.orbit.stabilizer;
  if (!stab.contains(tp)) throw InputError("element does not stabilize the point");
  Cyclotomic v = o.module.irreps->value(irrep, stab.to_local(tp));
  if (s.alpha) v = Cyclotomic::exp2pi(transport_phase(*s.alpha, sigma, u, t)) * v;
  return v;
}

QEllClass restrict_class(const EquivariantMap& m, const QEllClass& c) {
  const QEllSpace& tgt = *c.space;
  const FiniteGroup& H = *tgt.group;
  std::optional<Cochain3> src_alpha;
  if (tgt.alpha) src_alpha = pullback_cochain(m.f, *tgt.alpha);
  QEllClass out;
  out.space = qell_basis(m.f.domain, m.source, src_alpha);
  const QEllSpace& src = *out.space;
  const auto h_classes = conjugacy_classes(H);
  const auto h_class_of = class_index(H, h_classes);

  for (const auto& sec : src.sectors) {
    const int fs = m.f(sec.sigma);
    const int sp = h_classes[h_class_of[fs]].representative;
    const int u0 = find_conjugator(H, sp, fs);
    const QEllSector& tsec = tgt.sector(sp);
    for (const auto& o : sec.orbits) {
      const int yx = m.phi[o.orbit.point];
      const int z = m.target.act(yx, H.inv(u0));
      const QEllOrbit* to = nullptr;
      for (const auto& cand : tsec.orbits)
        if (std::binary_search(cand.orbit.members.begin(), cand.orbit.members.end(), z)) to = &cand;
      if (!to) throw InternalError("image point not found in target sector");
      int w = -1;
      for (int k : tsec.centralizer.embedding)
        if (m.target.act(to->orbit.point, k) == z) {
          w = k;
          break;
        }
      const int v = H.mul(w, u0);
      const Subgroup& K = o.orbit.stabilizer;
      const Subgroup& L = to->orbit.stabilizer;

      if (src_alpha) {
        const Cochain2 theta = transgress_on(*src_alpha, sec.sigma, K);
        for (int i = 0; i < K.order(); ++i)
          for (int j = 0; j < K.order(); ++j) {
            const int a = K.to_ambient(i), b = K.to_ambient(j);
            if (theta(i, j) !=
                groupoid_cocycle(*tgt.alpha, fs, m.f(a), m.f(b)))
              throw InternalError("pulled-back twist differs from the transgressed twist");
          }
      }

      for (const auto& [b, coeff] : c.terms) {
        if (b.sigma != sp || b.orbit_point != to->orbit.point) continue;
        const LambdaIrrep& lam = to->module.basis[b.irrep];
        std::vector<Cyclotomic> psi(K.order());
        for (int i = 0; i < K.order(); ++i) {
          const int t = m.f(K.to_ambient(i));
          const int tp = H.mul(H.mul(v, t), H.inv(v));
          Cyclotomic val = to->module.irreps->value(lam.irrep, L.to_local(tp));
          if (tgt.alpha) val = Cyclotomic::exp2pi(transport_phase(*tgt.alpha, sp, v, t)) * val;
          psi[i] = val;
        }
        const IrrepSystem& sys = *o.module.irreps;
        for (const LambdaIrrep& mu : o.module.basis) {
          std::vector<Cyclotomic> chi(K.order());
          for (int i = 0; i < K.order(); ++i) chi[i] = sys.value(mu.irrep, i);
          const Cyclotomic ip = projective_inner_product(sys, psi, chi);
          if (!ip.is_rational() || ip.rational().get_den() != 1 || ip.rational() < 0)
            throw InternalError("restricted character does not decompose");
          const long mult = ip.rational().get_num().get_si();
          if (mult == 0) continue;
          if (mu.x != lam.x) throw InternalError("restriction changed a q-degree");
          out.add({sec.sigma, o.orbit.point, mu.irrep, b.q_shift}, coeff * mult);
        }
      }
    }
  }
  return out;
}

}  // namespace qell
