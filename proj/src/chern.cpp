#include "qell/chern.hpp"

#include <algorithm>

namespace qell {

namespace {

// Order of (0,s) in the extension of C_G(s) by theta_s (or of s itself).
int lift_order(const QEllSpace& space, int s) {
  const FiniteGroup& G = *space.group;
  if (!space.alpha) return G.element_order(s);
  QZ a;
  int g = s;
  for (int m = 1;; ++m) {
    if (g == G.identity() && a.is_zero()) return m;
    a += groupoid_cocycle(*space.alpha, s, g, s);
    g = G.mul(g, s);
  }
}

const QEllOrbit* orbit_containing(const QEllSector& sec, int y) {
  for (const auto& o : sec.orbits)
    if (std::binary_search(o.orbit.members.begin(), o.orbit.members.end(), y)) return &o;
  return nullptr;
}

std::vector<int> points_fixed_by(const GSet& x, const std::vector<int>& elems) {
  return fixed_points(x, elems).points;
}

}  // namespace

SectorRep restrict_c(const QEllClass& c, int sigma) {
  const QEllSpace& space = *c.space;
  const QEllSector& sec = space.sector(sigma);
  SectorRep r;
  r.sigma = sigma;
  r.N = lift_order(space, sigma);
  for (const auto& o : sec.orbits)
    if (o.module.N != r.N) throw InternalError("sector orbits disagree on the pullback order");
  for (const auto& [b, coeff] : c.terms) {
    if (b.sigma != sigma) continue;
    const QZ x = space.degree(b);
    if (r.N % x.den() != 0) throw InternalError("q-degree is not a multiple of 1/N");
    const long nx = x.num() * (r.N / x.den());
    r.terms.push_back({b.orbit_point, b.irrep, nx + static_cast<long>(r.N) * b.q_shift, coeff});
  }
  return r;
}

KernelReport kernel_c(const QEllSpace& space, int sigma) {
  const FiniteGroup& G = *space.group;
  const QEllSector& sec = space.sector(sigma);
  KernelReport rep;
  rep.N = lift_order(space, sigma);
  QZ a;
  int g = G.identity();
  for (long m = 0; m < rep.N; ++m) {
    rep.elements.push_back({m, QZ(-m, rep.N), a, g});
    if (space.alpha) a += groupoid_cocycle(*space.alpha, sigma, sigma, g);
    g = G.mul(g, sigma);
  }
  for (int x : points_fixed_by(space.gset, {sigma}))
    for (const auto& k : rep.elements)
      if (space.gset.act(x, k.g) != x) {
        rep.acts_trivially = false;
        rep.witness = "point " + std::to_string(x) + " moved by kernel element m=" + std::to_string(k.m);
      }
  for (const auto& o : sec.orbits) {
    const Subgroup& H = o.orbit.stabilizer;
    for (const auto& lam : o.module.basis) {
      const long n = lam.x.num() * (rep.N / lam.x.den());
      for (const auto& k : rep.elements) {
        const Cyclotomic v = Cyclotomic::exp2pi(static_cast<long>(n) * k.t + k.a) *
                             o.module.irreps->value(lam.irrep, H.to_local(k.g));
        if (v != Cyclotomic(lam.degree)) {
          rep.fibers_trivial = false;
          rep.witness = "orbit " + std::to_string(o.orbit.point) + " irrep " +
                        std::to_string(lam.irrep) + " sees " + v.str() + " at m=" + std::to_string(k.m);
        }
      }
    }
  }
  return rep;
}

QZCharacter line_character(const Cochain3& alpha, int s, int t) {
  const Cochain2 theta = transgress_unchecked(alpha, s);
  QZCharacter chi;
  chi.elements = centralizer(*alpha.group, {s, t});
  for (int h : chi.elements) chi.values.push_back(theta.ambient(t, h) - theta.ambient(h, t));
  return chi;
}

WillertonReport verify_willerton_line(const Cochain3& alpha, int s, int t) {
  const QZCharacter line = line_character(alpha, s, t);
  const QZCharacter gro = gro_character(alpha, s, t);
  for (std::size_t i = 0; i < line.elements.size(); ++i)
    if (line.values[i] != gro.values[i]) return {false, line.elements[i]};
  return {};
}

std::map<int, EllFunction> atiyah_segal(const QEllSpace& space, const SectorRep& sector, int tau) {
  const FiniteGroup& G = *space.group;
  if (!G.commute(sector.sigma, tau)) throw InputError("element does not centralize the sector");
  const QEllSector& sec = space.sector(sector.sigma);
  std::map<int, EllFunction> out;
  for (int y : points_fixed_by(space.gset, {sector.sigma, tau})) {
    EllFunction& f = out[y];
    const QEllOrbit* o = orbit_containing(sec, y);
    for (const auto& t : sector.terms) {
      if (t.orbit_point != o->orbit.point) continue;
      const Cyclotomic v = fiber_character(space, sector.sigma, *o, t.irrep, y, tau);
      f.add_term({0, 1}, t.n, v * Cyclotomic(t.coeff));
    }
  }
  return out;
}

EllClass chern_character(const QEllClass& c) {
  const QEllSpace& space = *c.space;
  const FiniteGroup& G = *space.group;
  EllClass out = EllClass::zero(space.group, space.gset, space.alpha);

  // restriction, weight decomposition (bookkeeping only), Atiyah-Segal
  for (const auto& sec : space.sectors) {
    const SectorRep rep = restrict_c(c, sec.sigma);
    for (int tau : sec.centralizer.embedding)
      for (auto& [y, f] : atiyah_segal(space, rep, tau)) out.at({sec.sigma, tau}, y) = f;
  }
  // Chern character on a finite set: K(X^{s,t}) (x) C is already the space
  // of functions, so this stage is the identity.

  const auto classes = conjugacy_classes(G);
  const auto class_of = class_index(G, classes);
  for (auto& [q, comp] : out.components) {
    const int s = classes[class_of[q.g]].representative;
    if (s == q.g) continue;
    const int k = find_conjugator(G, s, q.g);
    const int tau = G.mul(G.mul(k, q.h), G.inv(k));
    const CommutingPair p{s, tau};
    Cyclotomic scalar(1);
    if (space.alpha) scalar = Cyclotomic::exp2pi(gro_phase(*space.alpha, s, tau, k));
    for (const auto& [y, f] : out.components.at(p)) comp.at(space.gset.act(y, k)) = f.scaled(scalar);
  }
  if (space.alpha)
    for (const auto& [q, comp] : out.components) out.lines[q] = gro_character(*space.alpha, q.g, q.h);
  return out;
}

namespace {

// Trace of an extension element through its eigenvalue multiplicities on
// the cyclic group it generates.
Cyclotomic eigen_trace(const CharacterTable& t, int row, const FiniteGroup& E, int elem,
                       int degree, std::string& problem) {
  const int o = E.element_order(elem);
  std::vector<Cyclotomic> powers;
  for (int j = 0, y = E.identity(); j < o; ++j, y = E.mul(y, elem)) powers.push_back(t.value(row, y));
  Cyclotomic trace;
  long total = 0;
  for (int k = 0; k < o; ++k) {
    Cyclotomic m;
    for (int j = 0; j < o; ++j) m += powers[j] * Cyclotomic::root(o, -static_cast<long>(j) * k);
    m = m.scaled(mpq_class(1, o));
    if (!m.is_rational() || m.rational().get_den() != 1 || m.rational() < 0) {
      problem = "eigenvalue multiplicity " + m.str() + " is not a natural number";
      return trace;
    }
    const long mk = m.rational().get_num().get_si();
    total += mk;
    trace += Cyclotomic::root(o, k) * Cyclotomic(mk);
  }
  if (total != degree) problem = "eigenvalue multiplicities do not add up to the degree";
  return trace;
}

}  // namespace

ImageReport check_image_preservation(const SL2Matrix& a, const QEllClass& c) {
  const QEllSpace& space = *c.space;
  const FiniteGroup& G = *space.group;
  ImageReport rep;
  const EllClass lhs = class_sl2_act(a, chern_character(c));
  const SL2Matrix ainv = a.inverse();
  const auto classes = conjugacy_classes(G);
  const auto class_of = class_index(G, classes);

  std::map<int, SectorRep> sectors;
  std::map<int, CentralExtension> big;  // extension over C_G(sigma)
  for (const auto& sec : space.sectors) {
    sectors.emplace(sec.sigma, restrict_c(c, sec.sigma));
    if (space.alpha) big.emplace(sec.sigma, central_extension(transgress(*space.alpha, sec.sigma)));
  }

  const std::complex<double> probes[] = {{0.31, 1.07}, {-0.42, 0.83}, {0.05, 1.9}};
  auto fail = [&](const CommutingPair& p, int z, const std::string& why) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.mismatch = "pair (" + std::to_string(p.g) + "," + std::to_string(p.h) + ") point " +
                   std::to_string(z) + ": " + why;
  };

  for (const auto& [p, comp] : lhs.components) {
    ++rep.pairs;
    const CommutingPair q = sl2_act_pair(G, a, p);
    const int s = classes[class_of[q.g]].representative;
    const int k = conjugators(G, s, q.g).back();
    const int tau = G.mul(G.mul(k, q.h), G.inv(k));
    const QEllSector& sec = space.sector(s);
    const SectorRep& sr = sectors.at(s);
    const Cyclotomic six =
        space.alpha ? Cyclotomic::exp2pi(gro_phase(*space.alpha, s, tau, k)) : Cyclotomic(1);

    for (const auto& [z, lhs_f] : comp) {
      const int y = space.gset.act(z, G.inv(k));
      const QEllOrbit* o = orbit_containing(sec, y);
      if (!o) {
        fail(p, z, "no orbit");
        continue;
      }
      int u = -1;
      for (int cand : sec.centralizer.embedding)
        if (space.gset.act(o->orbit.point, cand) == y) u = cand;
      const Subgroup& H = o->orbit.stabilizer;
      const IrrepSystem& sys = *o->module.irreps;
      std::vector<RawEllTerm> raw;
      for (const auto& t : sr.terms) {
        if (t.orbit_point != o->orbit.point) continue;
        std::string problem;
        Cyclotomic trace;
        if (space.alpha) {
          const CentralExtension& e = big.at(s);
          const FiniteGroup& T = *e.total;
          const Subgroup& C = sec.centralizer;
          const int lu = e.element(QZ(), C.to_local(u));
          const int lt = e.element(QZ(), C.to_local(tau));
          const int l = T.mul(T.mul(lu, lt), T.inv(lu));
          const CentralExtension& eh = *sys.extension;
          const int elem = eh.element(e.fiber(l), H.to_local(C.to_ambient(e.base_of(l))));
          trace = eigen_trace(*sys.table, sys.rows[t.irrep], *eh.total, elem, sys.degree(t.irrep), problem);
        } else {
          const int l = G.mul(G.mul(u, tau), G.inv(u));
          trace = eigen_trace(*sys.table, sys.rows[t.irrep], *H.group, H.to_local(l),
                              sys.degree(t.irrep), problem);
        }
        if (!problem.empty()) fail(p, z, problem);
        raw.push_back({ainv, t.n, trace * six * Cyclotomic(t.coeff)});
      }
      const EllFunction rhs_f = ell_normalize(raw);
      if (!ell_equal(lhs_f, rhs_f)) fail(p, z, "symbolic mismatch");
      for (const auto& tau_probe : probes) {
        const auto l = ell_eval(lhs_f, tau_probe, 1.0), r = ell_eval(rhs_f, tau_probe, 1.0);
        if (std::abs(l - r) > 1e-9 * (1 + std::abs(l))) fail(p, z, "numeric mismatch");
      }
    }

    if (space.alpha) {
      const Cochain2 theta = transgress_unchecked(*space.alpha, q.g);
      const auto cent = centralizer(G, {q.g, q.h});
      const auto it = lhs.lines.find(p);
      if (it == lhs.lines.end()) {
        fail(p, -1, "missing line character");
      } else {
        for (int h : cent)
          if (it->second.at(h) != theta.ambient(q.h, h) - theta.ambient(h, q.h))
            fail(p, -1, "line character mismatch at " + std::to_string(h));
      }
    }
  }
  return rep;
}

}  // namespace qell
