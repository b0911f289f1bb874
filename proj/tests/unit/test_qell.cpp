#include <algorithm>

#include "doctest.h"
#include "qell/qell.hpp"
#include "qell/suite.hpp"

using namespace qell;

namespace {

GroupPtr make(const std::string& name) { return share(builtin_group(name)); }

std::vector<QZ> degrees(const QEllSpace& s) { return qell_rank_report(s).all_degrees(); }

}  // namespace

TEST_CASE("G-sets") {
  const auto z2 = make("Z2");
  CHECK_THROWS_AS(GSet::make(z2, 2, {0, 1, 1, 1}), InputError);
  CHECK_THROWS_AS(GSet::make(z2, 2, {0, 2, 1, 0}), InputError);
  const GSet swap = GSet::make(z2, 2, {0, 1, 1, 0});
  CHECK(fixed_points(swap, {1}).points.empty());
  CHECK(fixed_points(GSet::point(z2), {1}).points == std::vector<int>{0});
  const auto s3 = make("S3");
  const GSet reg = GSet::regular(s3);
  for (int g = 1; g < 6; ++g) CHECK(fixed_points(reg, {g}).points.empty());
  CHECK(fixed_points(reg, {0}).points.size() == 6);
  const GSet both = disjoint_union(swap, GSet::point(z2));
  CHECK(both.size == 3);
  CHECK(both.act(2, 1) == 2);
}

TEST_CASE("basis of Z/2 over a point") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  CHECK(s->basis.size() == 4);
  CHECK(degrees(*s) == std::vector<QZ>{QZ(), QZ(), QZ(), QZ(1, 2)});
  CHECK(s->sector(0).orbits[0].module.N == 1);
  CHECK(s->sector(1).orbits[0].module.N == 2);

  const auto t = qell_basis(z2, GSet::point(z2), cyclic_cocycle(2, 1));
  CHECK(degrees(*t) == std::vector<QZ>{QZ(), QZ(), QZ(1, 4), QZ(3, 4)});
  const auto rep = qell_rank_report(*t);
  CHECK(rep.total == 4);
  REQUIRE(rep.sectors.size() == 2);
  CHECK(rep.sectors[0].degrees == std::map<QZ, int>{{QZ(), 2}});
  CHECK(rep.sectors[1].degrees == std::map<QZ, int>{{QZ(1, 4), 1}, {QZ(3, 4), 1}});
}

TEST_CASE("point ranks") {
  CHECK(qell_rank_report(*qell_basis(make("S3"), GSet::point(make("S3")), std::nullopt)).total == 8);
  // sum over classes of the number of classes of the centralizer
  for (const auto& g : suite_groups()) {
    int want = 0;
    for (const auto& c : conjugacy_classes(*g.group))
      want += static_cast<int>(conjugacy_classes(*centralizer_subgroup(g.group, {c.representative}).group).size());
    CHECK(qell_rank_report(*qell_basis(g.group, GSet::point(g.group), std::nullopt)).total == want);
  }
}

TEST_CASE("trivial group") {
  const auto one = make("1");
  const auto s = qell_basis(one, GSet::trivial(one, 3), std::nullopt);
  CHECK(s->basis.size() == 3);
  for (const QZ& x : degrees(*s)) CHECK(x.is_zero());
}

TEST_CASE("twist degeneration and additivity") {
  for (const auto& g : suite_groups())
    for (const auto& sp : suite_spaces(g.group)) {
      const auto u = qell_basis(g.group, sp.gset, std::nullopt);
      const auto z = qell_basis(g.group, sp.gset, Cochain3::zero(g.group));
      CHECK(u->basis == z->basis);
      CHECK(degrees(*u) == degrees(*z));
    }
  for (const char* name : {"Z4", "S3", "Q8"}) {
    const auto g = make(name);
    const auto sp = suite_spaces(g);
    const GSet& x = sp[1].gset;
    const GSet& y = sp.back().gset;
    const auto a = qell_rank_report(*qell_basis(g, x, std::nullopt));
    const auto b = qell_rank_report(*qell_basis(g, y, std::nullopt));
    const auto ab = qell_rank_report(*qell_basis(g, disjoint_union(x, y), std::nullopt));
    CHECK(ab.total == a.total + b.total);
    auto da = a.all_degrees(), db = b.all_degrees();
    da.insert(da.end(), db.begin(), db.end());
    std::sort(da.begin(), da.end());
    CHECK(ab.all_degrees() == da);
  }
}

TEST_CASE("trivial action factorization") {
  for (const auto& g : suite_groups()) {
    if (g.group->order() > 12) continue;
    for (const auto& c : suite_cocycles(g, 1, 1)) {
      if (!c.alpha) continue;
      const auto s = qell_basis(g.group, GSet::trivial(g.group, 3), c.alpha);
      const auto rep = qell_rank_report(*s);
      for (const auto& sec : rep.sectors)
        CHECK(sec.rank == 3 * projective_irreps(transgress(*c.alpha, sec.sigma)).size());
    }
  }
}

TEST_CASE("q-multiplication") {
  const auto z2 = make("Z2");
  const auto s = qell_basis(z2, GSet::point(z2), std::nullopt);
  QEllClass c = QEllClass::generator(s, s->basis[0], 2);
  c.add(s->basis[3], -1);
  CHECK(q_multiply(c, 0) == c);
  CHECK(q_multiply(q_multiply(c, 1), -1) == c);
  const QEllClass m = q_multiply(c, 3);
  for (const auto& [b, coeff] : m.terms) CHECK(b.q_shift == 3);
  CHECK(m.terms.size() == 2);
}

TEST_CASE("restriction of classes") {
  const auto z4 = make("Z4"), z2 = make("Z2");
  const auto big = qell_basis(z4, GSet::point(z4), std::nullopt);

  const EquivariantMap id = EquivariantMap::make(GroupHom::identity(z4), GSet::point(z4), GSet::point(z4), {0});
  for (const auto& b : big->basis) {
    const QEllClass c = QEllClass::generator(big, b);
    CHECK(restrict_class(id, c).terms == c.terms);
  }

  // Z/2 -> Z/4, 1 -> 2: the sigma = 2 sector restricts to the sigma = 1 sector
  const GroupHom inc = GroupHom::make(z2, z4, {0, 2});
  const EquivariantMap m = EquivariantMap::make(inc, GSet::point(z2), GSet::point(z4), {0});
  const auto small = qell_basis(z2, GSet::point(z2), std::nullopt);
  for (const auto& b : big->basis) {
    if (b.sigma != 2) continue;
    const QEllClass r = restrict_class(m, QEllClass::generator(big, b));
    // oracle: the irreducible of Z/4 with chi(1) = i^j restricts to the
    // character of Z/2 with value i^{2j} = (-1)^j at 1
    const Cyclotomic at2 = big->sector(2).orbits[0].module.irreps->value(b.irrep, 2);
    REQUIRE(r.terms.size() == 1);
    const auto& [rb, coeff] = *r.terms.begin();
    CHECK(coeff == 1);
    CHECK(rb.sigma == 1);
    CHECK(small->sector(1).orbits[0].module.irreps->value(rb.irrep, 1) == at2);
    CHECK(small->degree(rb) == big->degree(b));
  }

  // trivial hom: the identity sector receives d copies of the trivial
  // character from a degree d irreducible
  const auto s3 = make("S3");
  const auto over = qell_basis(s3, GSet::point(s3), std::nullopt);
  const EquivariantMap triv = EquivariantMap::make(GroupHom::trivial(z2, s3), GSet::point(z2), GSet::point(s3), {0});
  for (const auto& b : over->basis) {
    if (b.sigma != s3->identity()) continue;
    const QEllClass r = restrict_class(triv, QEllClass::generator(over, b));
    long total = 0;
    for (const auto& [rb, coeff] : r.terms)
      if (rb.sigma == 0) {
        CHECK(rb.irrep == 0);
        total += coeff;
      }
    CHECK(total == over->irrep(b).degree);
  }
}
