#include "doctest.h"
#include "qell/chern.hpp"
#include "qell/suite.hpp"

using namespace qell;

namespace {

GroupPtr make(const std::string& name) { return share(builtin_group(name)); }

// The generator (sigma, irrep) whose degree is x.
QEllBasisElement with_degree(const QEllSpace& s, int sigma, QZ x) {
  for (const auto& b : s.basis)
    if (b.sigma == sigma && s.degree(b) == x) return b;
  FAIL("no generator of that degree");
  return {};
}

EllFunction q_to(long n, long coeff) { return EllFunction::monomial(n, Cyclotomic(coeff)); }

}  // namespace

TEST_CASE("restriction to a sector") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  const QEllBasisElement minus = with_degree(*s, 1, QZ(1, 2));
  const SectorRep r = restrict_c(QEllClass::generator(s, minus), 1);
  CHECK(r.N == 2);
  REQUIRE(r.terms.size() == 1);
  CHECK(r.terms[0].n == 1);

  QEllBasisElement plus = minus;
  plus.irrep = 0;
  CHECK(restrict_c(QEllClass::generator(s, plus), 1).terms[0].n == 0);

  // an external shift k contributes N k
  QEllBasisElement shifted = minus;
  shifted.q_shift = 3;
  CHECK(restrict_c(QEllClass::generator(s, shifted), 1).terms[0].n == 1 + 2 * 3);

  const auto t = qell_basis(z2, GSet::point(z2), cyclic_cocycle(2, 1));
  const SectorRep tr = restrict_c(QEllClass::generator(t, with_degree(*t, 1, QZ(1, 4))), 1);
  CHECK(tr.N == 4);
  CHECK(tr.terms[0].n == 1);
}

TEST_CASE("kernel of the pullback") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  const KernelReport k1 = kernel_c(*s, 1);
  CHECK(k1.N == 2);
  CHECK(k1.elements.size() == 2);
  CHECK(k1.ok());
  const KernelReport k0 = kernel_c(*s, 0);
  CHECK(k0.elements.size() == 1);
  CHECK(k0.ok());

  const auto t = qell_basis(z2, GSet::point(z2), cyclic_cocycle(2, 1));
  const KernelReport kt = kernel_c(*t, 1);
  CHECK(kt.N == 4);
  CHECK(kt.elements.size() == 4);
  CHECK(kt.ok());

  for (const auto& g : suite_groups()) {
    if (g.group->order() > 8) continue;
    for (const auto& c : suite_cocycles(g, 1, 1))
      for (const auto& sp : suite_spaces(g.group)) {
        const auto space = qell_basis(g.group, sp.gset, c.alpha);
        for (const auto& sec : space->sectors) CHECK(kernel_c(*space, sec.sigma).ok());
      }
  }
}

TEST_CASE("Atiyah-Segal values") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  const SectorRep r = restrict_c(QEllClass::generator(s, with_degree(*s, 1, QZ(1, 2))), 1);
  CHECK(atiyah_segal(*s, r, 0).at(0) == q_to(1, 1));
  CHECK(atiyah_segal(*s, r, 1).at(0) == q_to(1, -1));

  QEllBasisElement triv{0, 0, 0, 0};
  const SectorRep e = restrict_c(QEllClass::generator(s, triv), 0);
  for (int tau = 0; tau < 2; ++tau) CHECK(atiyah_segal(*s, e, tau).at(0) == q_to(0, 1));

  const auto t = qell_basis(z2, GSet::point(z2), cyclic_cocycle(2, 1));
  const SectorRep tr = restrict_c(QEllClass::generator(t, with_degree(*t, 1, QZ(1, 4))), 1);
  CHECK(atiyah_segal(*t, tr, 0).at(0) == EllFunction::monomial(1, Cyclotomic(1)));
  CHECK(atiyah_segal(*t, tr, 1).at(0) == EllFunction::monomial(1, Cyclotomic::root(4, 1)));

  const auto s3 = make("S3");
  const auto over = qell_basis(s3, GSet::point(s3), std::nullopt);
  const SectorRep any = restrict_c(QEllClass::generator(over, over->basis.back()), over->basis.back().sigma);
  for (int x = 0; x < s3->order(); ++x)
    if (!s3->commute(x, any.sigma)) CHECK_THROWS_AS(atiyah_segal(*over, any, x), InputError);
}

TEST_CASE("Chern character") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  const EllClass ch = chern_character(QEllClass::generator(s, with_degree(*s, 1, QZ(1, 2))));
  for (const auto& [p, comp] : ch.components) {
    if (p.g == 1)
      CHECK(comp.at(0) == q_to(1, p.h == 0 ? 1 : -1));
    else
      CHECK(comp.at(0).is_zero());
  }
  CHECK(ell_equal(chern_character(QEllClass{s, {}}), EllClass::zero(z2, GSet::point(z2), std::nullopt)));
}

TEST_CASE("twisted pipeline degenerates") {
  for (const auto& g : suite_groups()) {
    if (g.group->order() > 12) continue;
    for (const auto& sp : suite_spaces(g.group)) {
      const auto u = qell_basis(g.group, sp.gset, std::nullopt);
      const auto z = qell_basis(g.group, sp.gset, Cochain3::zero(g.group));
      for (const auto& b : u->basis)
        CHECK(ell_equal(chern_character(QEllClass::generator(u, b)), chern_character(QEllClass::generator(z, b))));
    }
  }
}

TEST_CASE("line characters") {
  const auto z2 = make("Z2");
  CHECK(verify_willerton_line(Cochain3::zero(z2), 1, 1).ok);
  CHECK(verify_willerton_line(cyclic_cocycle(2, 1), 1, 1).ok);
  CHECK(line_character(cyclic_cocycle(2, 1), 1, 1).is_zero());
  for (const auto& g : suite_groups())
    for (const auto& c : suite_cocycles(g, 1, 1)) {
      if (!c.alpha) continue;
      for (const auto& p : commuting_pairs(*g.group)) {
        const auto r = verify_willerton_line(*c.alpha, p.g, p.h);
        CHECK_MESSAGE(r.ok, g.spec.dump(), " ", c.label, " witness ", r.witness);
      }
    }
}

TEST_CASE("image preservation") {
  const SL2Matrix S = SL2Matrix::S(), T = SL2Matrix::T();
  CHECK(check_image_preservation(SL2Matrix::identity(), [] {
          const auto z2 = make("Z2");
          const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
          return QEllClass::generator(s, s->basis.back());
        }()).ok);

  struct Case {
    const char* group;
    std::optional<Cochain3> alpha;
  };
  const auto v4 = make("Z2xZ2");
  std::vector<Case> cases{{"Z2", std::nullopt},          {"Z4", std::nullopt}, {"S3", std::nullopt},
                          {"Z2", cyclic_cocycle(2, 1)}, {"Z4", cyclic_cocycle(4, 1)}};
  for (const auto& c : cases) {
    const auto g = c.alpha ? c.alpha->group : make(c.group);
    const auto s = qell_basis(g, GSet::point(g), c.alpha);
    for (const auto& b : s->basis)
      for (const SL2Matrix& a : {S, T}) {
        const auto r = check_image_preservation(a, QEllClass::generator(s, b));
        CHECK_MESSAGE(r.ok, c.group, " ", r.mismatch);
      }
  }
  const auto s = qell_basis(v4, GSet::point(v4), triple_product_cocycle(v4, {2, 2}, 0, 1, 1));
  for (const auto& b : s->basis)
    for (const SL2Matrix& a : {S, T}) CHECK(check_image_preservation(a, QEllClass::generator(s, b)).ok);
}

TEST_CASE("conjugation coherence") {
  // the output is fixed by every conjugator, so the conjugator chosen to
  // fill non-representative pairs does not matter
  const auto s3 = make("S3");
  for (const auto& sp : suite_spaces(s3)) {
    const auto s = qell_basis(s3, sp.gset, std::nullopt);
    for (const auto& b : s->basis) {
      const EllClass ch = chern_character(QEllClass::generator(s, b));
      for (int k = 0; k < s3->order(); ++k) CHECK(ell_equal(class_group_act(k, ch), ch));
    }
  }
}
