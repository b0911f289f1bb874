#include <cmath>
#include <random>

#include "doctest.h"
#include "qell/devoto.hpp"
#include "qell/suite.hpp"

using namespace qell;

namespace {

GroupPtr make(const std::string& name) { return share(builtin_group(name)); }

EllFunction q_to(long n) { return EllFunction::monomial(n, Cyclotomic(1)); }

}  // namespace

TEST_CASE("cosets") {
  CHECK(Coset::of(0, 1) == Coset{0, 1});
  CHECK(Coset::of(0, -1) == Coset{0, 1});
  CHECK(Coset::of(-1, 0) == Coset{1, 0});
  CHECK(Coset::of(-2, -3) == Coset{2, 3});
  const SL2Matrix m = Coset{3, 5}.matrix();
  CHECK(m.c == 3);
  CHECK(m.d == 5);
  CHECK(m.a * m.d - m.b * m.c == 1);
}

TEST_CASE("normal form") {
  const EllFunction id = ell_normalize({{SL2Matrix::identity(), 1, Cyclotomic(1)}});
  CHECK(id.terms.size() == 1);
  CHECK(id.terms.begin()->first == std::pair<Coset, long>{Coset{0, 1}, 1});
  CHECK(ell_normalize({{SL2Matrix::T(), 1, Cyclotomic(1)}}) == id);
  CHECK(ell_normalize({{SL2Matrix{-1, 0, 0, -1}, 1, Cyclotomic(1)}}) == id);
  // cancellation drops the term
  CHECK(ell_normalize({{SL2Matrix::identity(), 2, Cyclotomic(1)}, {SL2Matrix::T(), 2, Cyclotomic(-1)}}).is_zero());
}

TEST_CASE("sl2 action on functions") {
  const EllFunction f = q_to(1);
  CHECK(ell_sl2_act(SL2Matrix::identity(), f) == f);
  const EllFunction c = EllFunction::constant(Cyclotomic(5));
  CHECK(ell_sl2_act(SL2Matrix::T(), c) == c);
  const EllFunction s = ell_sl2_act(SL2Matrix::S(), f);
  REQUIRE(s.terms.size() == 1);
  CHECK(s.terms.begin()->first == std::pair<Coset, long>{Coset{1, 0}, 1});
}

TEST_CASE("evaluation") {
  const std::complex<double> i(0, 1);
  CHECK(std::abs(ell_eval(EllFunction::constant(Cyclotomic(1)), i, 1.0) - 1.0) < 1e-12);
  CHECK(std::abs(ell_eval(q_to(1), i, 1.0) - std::exp(-2 * M_PI)) < 1e-12);
  CHECK(std::abs(ell_eval(q_to(1), i, 1.0) - 0.00186744) < 1e-8);
  // homogeneous of weight 0 in (t1, t2)
  const std::complex<double> mu(0.7, -0.3);
  const EllFunction s = ell_sl2_act(SL2Matrix::S(), q_to(2));
  const std::complex<double> tau(0.2, 1.1);
  CHECK(std::abs(ell_eval(s, tau, 1.0) - ell_eval(s, mu * tau, mu)) < 1e-9);
}

TEST_CASE("normal form soundness and SL2 relations") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> x(-1, 1), y(0.5, 1.5);
  const SL2Matrix S = SL2Matrix::S(), T = SL2Matrix::T();
  for (int t = 0; t < 200; ++t) {
    const EllFunction f = random_ell_function(rng);
    CHECK(ell_equal(f, f));
    EllFunction g = f + q_to(7);
    CHECK_FALSE(ell_equal(f, g));
    // T-translate of every term
    CHECK(ell_equal(ell_sl2_act(T, EllFunction::constant(Cyclotomic(1))), EllFunction::constant(Cyclotomic(1))));
    const SL2Matrix st = S * T;
    CHECK(ell_sl2_act(S * S * S * S, f) == f);
    CHECK(ell_sl2_act(st * st * st * st * st * st, f) == f);
    const SL2Matrix a = random_sl2(rng), b = random_sl2(rng);
    CHECK(ell_sl2_act(b, ell_sl2_act(a, f)) == ell_sl2_act(a * b, f));
    for (int p = 0; p < 5; ++p) {
      const std::complex<double> tau(x(rng), y(rng));
      const auto at = (static_cast<double>(a.a) * tau + static_cast<double>(a.b)) /
                      (static_cast<double>(a.c) * tau + static_cast<double>(a.d));
      const auto lhs = ell_eval(ell_sl2_act(a, f), tau, 1.0), rhs = ell_eval(f, at, 1.0);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * (1 + std::abs(lhs) + std::abs(rhs)));
    }
  }
}

TEST_CASE("class actions") {
  const auto z2 = make("Z2");
  const GSet pt = GSet::point(z2);
  EllClass f = EllClass::zero(z2, pt, std::nullopt);
  f.at({1, 0}, 0) = EllFunction::constant(Cyclotomic(3));
  CHECK(ell_equal(class_sl2_act(SL2Matrix::identity(), f), f));
  // (A.F)_p = F_{p.A}: the support moves to the pair q with q.A = (1,0)
  const EllClass s = class_sl2_act(SL2Matrix::S(), f);
  for (const auto& [p, comp] : s.components) {
    const bool support = sl2_act_pair(*z2, SL2Matrix::S(), p) == CommutingPair{1, 0};
    CHECK(comp.at(0).is_zero() != support);
  }
  CHECK(ell_equal(class_sl2_act(SL2Matrix::S().inverse(), s), f));
  CHECK(ell_equal(class_group_act(0, f), f));

  // abelian and untwisted: conjugation only relabels points
  const auto z4 = make("Z4");
  std::mt19937_64 rng(4);
  EllClass r = EllClass::zero(z4, GSet::regular(z4), std::nullopt);
  for (auto& [p, comp] : r.components)
    for (auto& [y, fn] : comp) fn = random_ell_function(rng);
  for (int k = 0; k < 4; ++k) {
    const EllClass moved = class_group_act(k, r);
    for (const auto& [p, comp] : r.components)
      for (const auto& [y, fn] : comp) CHECK(moved.at(p, GSet::regular(z4).act(y, k)) == fn);
  }

  // Z/2 with the cyclic twist: k = 1 on (1,1) is the scalar exp(0) = 1
  EllClass tw = EllClass::zero(z2, pt, cyclic_cocycle(2, 1));
  tw.at({1, 1}, 0) = q_to(1);
  CHECK(class_group_act(1, tw).at({1, 1}, 0) == q_to(1));
}

TEST_CASE("group action defect law") {
  for (const auto& g : suite_groups()) {
    if (g.group->order() > 8) continue;
    const FiniteGroup& G = *g.group;
    for (const auto& c : suite_cocycles(g, 1, 1)) {
      const auto alpha = c.alpha;
      std::mt19937_64 rng(31);
      EllClass f = EllClass::zero(g.group, GSet::point(g.group), alpha);
      for (auto& [p, comp] : f.components) comp.at(0) = random_ell_function(rng);
      for (int k = 0; k < G.order(); ++k)
        for (int k2 = 0; k2 < G.order(); ++k2) {
          const EllClass two = class_group_act(k2, class_group_act(k, f));
          const EllClass one = class_group_act(G.mul(k, k2), f);
          for (const auto& [p, comp] : f.components) {
            const QZ defect = alpha ? group_act_defect(*alpha, p, k, k2) : QZ();
            if (!alpha) CHECK(defect.is_zero());
            const CommutingPair q = conj_pair(G, p, G.mul(k, k2));
            CHECK(two.at(q, 0) == one.at(q, 0).scaled(Cyclotomic::exp2pi(defect)));
          }
        }
    }
  }
}

TEST_CASE("constant class is invariant") {
  for (const char* name : {"S3", "Q8", "Z2xZ2"}) {
    const auto g = make(name);
    const EllClass one = EllClass::constant(g, GSet::regular(g), Cyclotomic(1));
    for (int k = 0; k < g->order(); ++k) CHECK(ell_equal(class_group_act(k, one), one));
    CHECK(ell_equal(class_sl2_act(SL2Matrix::S(), one), one));
    CHECK(ell_equal(class_sl2_act(SL2Matrix::T(), one), one));
  }
}

TEST_CASE("invariant rank over a point") {
  CHECK(invariant_rank_pt(make("S3"), std::nullopt).total == 8);
  CHECK(invariant_rank_pt(make("Z2"), std::nullopt).total == 4);
  CHECK(invariant_rank_pt(make("Z2"), cyclic_cocycle(2, 1)).total == 4);
  const auto q8 = make("Q8");
  CHECK(invariant_rank_pt(q8, std::nullopt).total ==
        static_cast<int>(pair_orbits(*q8, PairAction::conjugation).size()));
  // twisted: an orbit counts iff the twist character vanishes
  const auto z222 = make("Z2xZ2xZ2");
  const Cochain3 a = triple_product_cocycle(z222, {2, 2, 2}, 0, 1, 2);
  const auto rep = invariant_rank_pt(z222, a);
  int want = 0;
  for (const auto& o : pair_orbits(*z222, PairAction::conjugation))
    if (gro_character(a, o.representative.g, o.representative.h).is_zero()) ++want;
  CHECK(rep.total == want);
  CHECK(rep.total < 64);
}
