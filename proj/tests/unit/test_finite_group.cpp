#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "qell/finite_group.hpp"
#include "qell/suite.hpp"

using namespace qell;

namespace {

GroupPtr make(const std::string& name) { return share(builtin_group(name)); }

int first_of_order(const FiniteGroup& g, int o) {
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == o) return x;
  return -1;
}

// Brute-force oracles.
int brute_class_count(const FiniteGroup& g) {
  std::set<std::vector<int>> classes;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> c;
    for (int k = 0; k < g.order(); ++k) c.push_back(g.conj(x, k));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    classes.insert(c);
  }
  return static_cast<int>(classes.size());
}

int brute_pair_orbits(const FiniteGroup& g) {
  std::set<std::vector<CommutingPair>> orbits;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      if (!g.commute(a, b)) continue;
      std::vector<CommutingPair> o;
      for (int k = 0; k < g.order(); ++k) o.push_back(conj_pair(g, {a, b}, k));
      std::sort(o.begin(), o.end());
      o.erase(std::unique(o.begin(), o.end()), o.end());
      orbits.insert(o);
    }
  return static_cast<int>(orbits.size());
}

}  // namespace

TEST_CASE("builtin groups") {
  const auto z2 = make("Z2");
  CHECK(z2->order() == 2);
  CHECK(z2->table() == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(make("S3")->order() == 6);
  CHECK(conjugacy_classes(*make("S3")).size() == 3);
  CHECK(make("D4")->order() == 8);
  CHECK(make("Q8")->order() == 8);
  CHECK(make("A4")->order() == 12);
  CHECK(make("Z2xZ3")->is_abelian());
  CHECK(make("Z2xZ3")->exponent() == 6);
  CHECK_THROWS_AS(builtin_group("Z0"), InputError);
  CHECK_THROWS_AS(builtin_group("nope"), InputError);
}

TEST_CASE("table validation") {
  // 0 is the identity and every element is its own inverse, but
  // (1*1)*2 = 0*2 = 2 differs from 1*(1*2) = 1*0 = 1.
  const std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 0, 0}, {2, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table(bad), InputError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), InputError);
  CHECK_NOTHROW(FiniteGroup::from_table({{0, 1}, {1, 0}}));
}

TEST_CASE("conjugacy classes") {
  CHECK(conjugacy_classes(*make("Z2")).size() == 2);
  const auto s3 = conjugacy_classes(*make("S3"));
  std::vector<std::size_t> sizes;
  for (const auto& c : s3) sizes.push_back(c.members.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2, 3});
  CHECK(conjugacy_classes(*make("Q8")).size() == 5);
  for (const auto& g : suite_groups())
    CHECK(static_cast<int>(conjugacy_classes(*g.group).size()) == brute_class_count(*g.group));
}

TEST_CASE("centralizers and element orders") {
  const auto s3 = make("S3");
  const int t = first_of_order(*s3, 2), c = first_of_order(*s3, 3);
  CHECK(centralizer(*s3, {t}).size() == 2);
  CHECK(centralizer(*s3, {s3->identity()}).size() == 6);
  CHECK(centralizer(*s3, {c, t}) == std::vector<int>{s3->identity()});
  CHECK(s3->element_order(s3->identity()) == 1);
  CHECK(s3->element_order(t) == 2);
  CHECK(s3->element_order(c) == 3);
}

TEST_CASE("commuting pairs") {
  CHECK(commuting_pairs(*make("Z2")).size() == 4);
  CHECK(commuting_pairs(*make("S3")).size() == 18);
  CHECK(commuting_pairs(*make("1")).size() == 1);
}

TEST_CASE("sl2 action on pairs") {
  const auto s3 = make("S3");
  const int t = first_of_order(*s3, 2);
  const CommutingPair p{t, s3->identity()};
  CHECK(sl2_act_pair(*s3, SL2Matrix::identity(), p) == p);
  const auto z4 = make("Z4");
  const CommutingPair q{1, 2};
  CHECK(sl2_act_pair(*z4, SL2Matrix::S(), q) == CommutingPair{2, z4->inv(1)});
  CHECK(sl2_act_pair(*z4, SL2Matrix::T(), q) == CommutingPair{z4->mul(1, z4->inv(2)), 2});
}

TEST_CASE("sl2 right-action law") {
  std::mt19937_64 rng(11);
  for (const char* name : {"Z4", "S3", "D4", "Q8", "Z2xZ2"}) {
    const auto g = make(name);
    const auto pairs = commuting_pairs(*g);
    for (int trial = 0; trial < 50; ++trial) {
      const SL2Matrix a = random_sl2(rng), b = random_sl2(rng);
      const auto& p = pairs[rng() % pairs.size()];
      CHECK(sl2_act_pair(*g, a, sl2_act_pair(*g, b, p)) == sl2_act_pair(*g, b * a, p));
    }
  }
}

TEST_CASE("pair orbits") {
  const auto z2 = make("Z2");
  const auto conj = pair_orbits(*z2, PairAction::conjugation);
  CHECK(conj.size() == 4);
  for (const auto& o : conj) CHECK(o.members.size() == 1);
  CHECK(pair_orbits(*make("S3"), PairAction::conjugation).size() == 8);
  const auto full = pair_orbits(*z2, PairAction::conjugation_and_sl2);
  REQUIRE(full.size() == 2);
  CHECK(full[0].members.size() == 1);
  CHECK(full[1].members.size() == 3);

  for (const auto& gi : suite_groups()) {
    const FiniteGroup& g = *gi.group;
    const auto fine = pair_orbits(g, PairAction::conjugation);
    CHECK(static_cast<int>(fine.size()) == brute_pair_orbits(g));
    // every coarse orbit is a union of conjugation orbits, and the
    // simultaneous centralizer is constant along SL2 orbits
    for (const auto& o : pair_orbits(g, PairAction::conjugation_and_sl2)) {
      const std::set<CommutingPair> members(o.members.begin(), o.members.end());
      for (const auto& f : fine)
        if (members.count(f.representative))
          for (const auto& m : f.members) CHECK(members.count(m) == 1);
      const auto c0 = centralizer(g, {o.representative.g, o.representative.h});
      for (const SL2Matrix& a : {SL2Matrix::S(), SL2Matrix::T()}) {
        const auto q = sl2_act_pair(g, a, o.representative);
        CHECK(centralizer(g, {q.g, q.h}) == c0);
      }
    }
  }
}

TEST_CASE("permutation groups and surjections") {
  const auto s4 = permutation_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  CHECK(s4.order() == 24);
  CHECK_THROWS_AS(permutation_group(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}, 100), InputError);
  const auto s3 = make("S3");
  CHECK(find_surjection_to_cyclic(*s3, 2).size() == 6);
  CHECK(find_surjection_to_cyclic(*s3, 3).empty());
}
