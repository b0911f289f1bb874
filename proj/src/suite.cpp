#include "qell/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

namespace qell {

namespace {

std::string pair_str(CommutingPair p) { return pair_key(p); }

std::string where(const VerifyCase& c, const SuiteCocycle& a) { return c.name + " [" + a.label + "]"; }

// Runs fn and turns escaping exceptions into a failure of r.
void guarded(CheckResult& r, const std::string& ctx, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    r.fail(ctx + ": " + e.what());
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::complex<double> random_tau(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-1.0, 1.0), y(0.5, 1.5);
  return {x(rng), y(rng)};
}

bool close(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) <= 1e-9 * (1 + std::abs(a) + std::abs(b));
}

// Also returns the sum of the term magnitudes, the scale of the rounding
// error of the float sum.
std::complex<double> eval_raw(const std::vector<RawEllTerm>& raw, std::complex<double> tau,
                              double& scale) {
  std::complex<double> s = 0;
  scale = 0;
  const std::complex<double> two_pi_i(0, 2 * M_PI);
  for (const auto& t : raw) {
    const auto& m = t.matrix;
    const std::complex<double> w = (static_cast<double>(m.a) * tau + static_cast<double>(m.b)) /
                                   (static_cast<double>(m.c) * tau + static_cast<double>(m.d));
    const std::complex<double> v = t.coeff.eval_numeric() * std::exp(two_pi_i * static_cast<double>(t.n) * w);
    s += v;
    scale += std::abs(v);
  }
  return s;
}

Cyclotomic random_coeff(std::mt19937_64& rng) {
  static const int mods[] = {1, 2, 3, 4, 6, 8, 12};
  std::uniform_int_distribution<int> pm(0, 6), k(0, 23), c(-3, 3);
  int v = c(rng);
  if (v == 0) v = 1;
  return Cyclotomic::root(mods[pm(rng)], k(rng)) * Cyclotomic(v);
}

std::vector<RawEllTerm> random_raw(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4), n(-2, 3);
  std::vector<RawEllTerm> raw;
  const int len = count(rng);
  for (int i = 0; i < len; ++i) raw.push_back({random_sl2(rng), n(rng), random_coeff(rng)});
  return raw;
}

EllClass random_class(const GroupPtr& g, const GSet& x, const std::optional<Cochain3>& alpha,
                      std::mt19937_64& rng) {
  EllClass f = EllClass::zero(g, x, alpha);
  for (auto& [p, comp] : f.components)
    for (auto& [pt, fn] : comp) fn = random_ell_function(rng);
  return f;
}

SL2Matrix power(const SL2Matrix& a, int k) {
  SL2Matrix r = SL2Matrix::identity();
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

// #conjugacy classes of C_G(s), summed over class representatives s.
int untwisted_point_rank(const GroupPtr& g) {
  int total = 0;
  for (const auto& cls : conjugacy_classes(*g))
    total += static_cast<int>(conjugacy_classes(*centralizer_subgroup(g, {cls.representative}).group).size());
  return total;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> verify_cocycle(const VerifyScope& scope) {
  CheckResult fam{"cocycle/families"}, dd{"cocycle/coboundaries"}, gro{"cocycle/twist-character"};
  std::mt19937_64 rng(mix(scope.seed, 1));
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k < n; ++k) {
      ++fam.cases;
      guarded(fam, "cyclic(" + std::to_string(n) + "," + std::to_string(k) + ")", [&] {
        const Cochain3 a = cyclic_cocycle(n, k);
        if (!check_cocycle3(a).ok || !check_normalized(a))
          fam.fail("cyclic(" + std::to_string(n) + "," + std::to_string(k) + ") is not a normalized cocycle");
      });
    }
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      ++fam.cases;
      const auto rep = check_cocycle3(*a.alpha);
      if (!rep.ok) {
        std::string w;
        for (int x : rep.witness) w += (w.empty() ? "" : ",") + std::to_string(x);
        fam.fail(where(c, a) + ": cocycle condition fails at (" + w + ")");
      }
      if (!check_normalized(*a.alpha)) fam.fail(where(c, a) + ": not normalized");
    }
    if (G->order() <= 8) {
      for (int t = 0; t < 100; ++t) {
        ++dd.cases;
        std::uniform_int_distribution<int> den(1, 12);
        Cochain2 beta = Cochain2::zero(G);
        const int d = den(rng);
        std::uniform_int_distribution<int> v(0, d - 1);
        for (auto& x : beta.values) x = QZ(v(rng), d);
        if (!check_cocycle3(coboundary3(beta)).ok) dd.fail(c.name + ": d(beta) is not a cocycle");
      }
    }
    if (G->order() > 24) continue;
    const auto pairs = commuting_pairs(*G);
    std::optional<Cochain3> base;
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      if (!a.alpha->values.empty() && std::any_of(a.alpha->values.begin(), a.alpha->values.end(),
                                                  [](QZ x) { return !x.is_zero(); }))
        base = *a.alpha;
      for (const auto& p : pairs) {
        ++gro.cases;
        if (!is_homomorphism(*G, gro_character(*a.alpha, p.g, p.h)))
          gro.fail(where(c, a) + ": twist character at " + pair_str(p) + " is not a homomorphism");
      }
    }
    if (!base) base = Cochain3::zero(G);
    for (int t = 0; t < 50; ++t) {
      const Cochain3 shifted = *base + coboundary3(random_normalized_cochain2(G, 6, rng));
      for (const auto& p : pairs) {
        ++gro.cases;
        if (gro_character(shifted, p.g, p.h) != gro_character(*base, p.g, p.h))
          gro.fail(c.name + ": twist character at " + pair_str(p) + " changes under a coboundary shift");
      }
    }
  }
  return {fam, dd, gro};
}

std::vector<CheckResult> verify_transgression(const VerifyScope& scope) {
  CheckResult cyc{"transgression/cocycle"}, sq{"transgression/pullback-square"};
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      guarded(cyc, where(c, a), [&] {
        if (!check_cocycle3(*a.alpha).ok) return;  // reported by the cocycle target
        for (int g = 0; g < G->order(); ++g) {
          ++cyc.cases;
          const Cochain2 th = transgress_unchecked(*a.alpha, g);
          if (!check_cocycle2(th).ok || !check_normalized(th))
            cyc.fail(where(c, a) + ": transgression at " + std::to_string(g) + " is not a normalized 2-cocycle");
        }
      });
    }
    for (const auto& h : suite_homs(c.group, scope.seed)) {
      for (const auto& a : h.codomain_cocycles) {
        if (!a.alpha) continue;
        guarded(sq, c.name + " " + h.label + " [" + a.label + "]", [&] {
          const Cochain3 pulled = pullback_cochain(h.f, *a.alpha);
          const GroupPtr& D = h.f.domain;
          for (int g = 0; g < D->order(); ++g) {
            ++sq.cases;
            const Subgroup cg = centralizer_subgroup(D, {g});
            const Cochain2 lhs = pullback_cochain(restrict_domain(h.f, cg), transgress_unchecked(*a.alpha, h.f(g)));
            const Cochain2 rhs = transgress_unchecked(pulled, g);
            if (lhs.values != rhs.values)
              sq.fail(c.name + " " + h.label + " [" + a.label + "]: square fails at " + std::to_string(g));
          }
        });
      }
    }
  }
  return {cyc, sq};
}

std::vector<CheckResult> verify_lemma(const VerifyScope& scope) {
  CheckResult r{"lemma/extension-order"}, sharp{"lemma/sharp-case"};
  auto check = [&](const VerifyCase& c, const std::string& label, const Cochain3& alpha) {
    const GroupPtr& G = c.group.group;
    for (int g = 0; g < G->order(); ++g) {
      ++r.cases;
      const Cochain2 th = transgress_unchecked(alpha, g);
      const CentralExtension e = central_extension(th);
      const int o = extension_element_order(e, QZ(), th.carrier.to_local(g));
      const long bound = value_order(th) * G->element_order(g);
      if (bound % o != 0)
        r.fail(c.name + " [" + label + "]: order " + std::to_string(o) + " of (0," + std::to_string(g) +
               ") does not divide " + std::to_string(bound));
    }
  };
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& a : c.cocycles)
      if (a.alpha) guarded(r, where(c, a), [&] { check(c, a.label, *a.alpha); });
    if (!scope.full_suite || G->order() > 12) continue;
    // extra coboundary shifts of every suite cocycle
    std::mt19937_64 rng(mix(scope.seed, 3 + G->order()));
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      for (int t = 0; t < 20; ++t) {
        const Cochain3 shifted = *a.alpha + coboundary3(random_normalized_cochain2(G, 4, rng));
        guarded(r, where(c, a) + " shifted", [&] { check(c, a.label + " shifted", shifted); });
      }
    }
  }
  ++sharp.cases;
  guarded(sharp, "Z2", [&] {
    const GroupPtr z2 = share(cyclic_group(2));
    Cochain2 th = Cochain2::zero(z2);
    th.at(1, 1) = QZ(1, 2);
    const CentralExtension e = central_extension(th);
    const int o = extension_element_order(e, QZ(), 1);
    if (o != 4) sharp.fail("Z2 with theta(1,1)=1/2: (0,1) has order " + std::to_string(o) + ", expected 4");
  });
  return {r, sharp};
}

std::vector<CheckResult> verify_characters(const VerifyScope& scope) {
  CheckResult tab{"characters/orthogonality"}, proj{"characters/projective"};
  std::vector<GroupInput> groups = scope.table_groups;
  for (const auto& c : scope.cases) groups.push_back(c.group);
  for (const auto& g : groups) {
    ++tab.cases;
    guarded(tab, g.spec.dump(), [&] {
      const auto t = character_table(g.group);
      const auto rep = check_orthogonality(*t);
      long sum = 0;
      for (int d : t->degrees) sum += static_cast<long>(d) * d;
      if (!rep.ok() || sum != g.group->order() || t->size() != static_cast<int>(t->classes.size()))
        tab.fail(g.spec.dump() + ": character table fails orthogonality or counts");
    });
  }
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      guarded(proj, where(c, a), [&] {
        for (const auto& cls : conjugacy_classes(*G)) {
          ++proj.cases;
          const Cochain2 th = transgress_unchecked(*a.alpha, cls.representative);
          const IrrepSystem sys = projective_irreps(th);
          long sum = 0;
          for (int i = 0; i < sys.size(); ++i) sum += static_cast<long>(sys.degree(i)) * sys.degree(i);
          if (sum != th.size())
            proj.fail(where(c, a) + ": projective degrees at " + std::to_string(cls.representative) +
                      " square-sum to " + std::to_string(sum) + ", not " + std::to_string(th.size()));
        }
      });
    }
  }
  return {tab, proj};
}

bool same_basis(const QEllSpace& a, const QEllSpace& b) {
  if (a.basis != b.basis) return false;
  for (const auto& x : a.basis)
    if (a.degree(x) != b.degree(x) || a.irrep(x).degree != b.irrep(x).degree) return false;
  return true;
}

std::vector<CheckResult> verify_qell(const VerifyScope& scope) {
  CheckResult rank{"qell/point-rank"}, degen{"qell/degeneration"}, uni{"qell/disjoint-union"},
      triv{"qell/trivial-action"};
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    guarded(rank, c.name, [&] {
      ++rank.cases;
      const RankReport r = qell_rank_report(*qell_basis(G, GSet::point(G), std::nullopt));
      const int expect = untwisted_point_rank(G);
      if (r.total != expect)
        rank.fail(c.name + ": point rank " + std::to_string(r.total) + ", expected " + std::to_string(expect));
    });
    for (const auto& sp : c.spaces) {
      guarded(degen, c.name + " " + sp.label, [&] {
        ++degen.cases;
        const auto none = qell_basis(G, sp.gset, std::nullopt);
        const auto zero = qell_basis(G, sp.gset, Cochain3::zero(G));
        if (!same_basis(*none, *zero)) degen.fail(c.name + " " + sp.label + ": zero twist changes the basis");
      });
    }
    std::vector<SuiteCocycle> all = c.cocycles;
    all.push_back({"untwisted", std::nullopt});
    for (const auto& a : all) {
      guarded(uni, where(c, a), [&] {
        if (c.spaces.size() < 2) return;
        ++uni.cases;
        const GSet& x = c.spaces[0].gset;
        const GSet& y = c.spaces[1].gset;
        const auto rx = qell_rank_report(*qell_basis(G, x, a.alpha));
        const auto ry = qell_rank_report(*qell_basis(G, y, a.alpha));
        const auto rxy = qell_rank_report(*qell_basis(G, disjoint_union(x, y), a.alpha));
        for (std::size_t i = 0; i < rxy.sectors.size(); ++i) {
          auto d = rx.sectors[i].degrees;
          for (const auto& [q, k] : ry.sectors[i].degrees) d[q] += k;
          if (d != rxy.sectors[i].degrees)
            uni.fail(where(c, a) + ": disjoint union is not additive at sector " +
                     std::to_string(rxy.sectors[i].sigma));
        }
      });
      if (!a.alpha) continue;
      guarded(triv, where(c, a), [&] {
        ++triv.cases;
        const int n = 2;
        const auto r = qell_rank_report(*qell_basis(G, GSet::trivial(G, n), a.alpha));
        for (const auto& s : r.sectors) {
          const int np = projective_irreps(transgress_unchecked(*a.alpha, s.sigma)).size();
          if (s.rank != n * np)
            triv.fail(where(c, a) + ": trivial-action rank at " + std::to_string(s.sigma) + " is " +
                      std::to_string(s.rank) + ", expected " + std::to_string(n * np));
        }
      });
    }
  }
  return {rank, degen, uni, triv};
}

std::vector<CheckResult> verify_devoto(const VerifyScope& scope) {
  CheckResult inv{"devoto/invariant-rank"}, pairs{"devoto/pair-action"}, act{"devoto/group-action"},
      cst{"devoto/constant-class"}, sound{"devoto/normal-form"}, rel{"devoto/sl2-relations"};
  std::mt19937_64 rng(mix(scope.seed, 5));
  const SL2Matrix S = SL2Matrix::S(), T = SL2Matrix::T();

  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    const FiniteGroup& g = *G;
    if (G->order() > 24 && !scope.full_suite) continue;
    guarded(inv, c.name, [&] {
      ++inv.cases;
      const auto orbits = pair_orbits(g, PairAction::conjugation);
      const auto r = invariant_rank_pt(G, std::nullopt);
      if (r.total != static_cast<int>(orbits.size()))
        inv.fail(c.name + ": invariant rank " + std::to_string(r.total) + " differs from the pair-orbit count");
      for (const auto& a : c.cocycles) {
        if (!a.alpha) continue;
        ++inv.cases;
        const auto t = invariant_rank_pt(G, a.alpha);
        if (t.total > r.total) inv.fail(where(c, a) + ": twisted invariant rank exceeds the untwisted one");
      }
    });

    guarded(pairs, c.name, [&] {
      const auto all = commuting_pairs(g);
      for (int t = 0; t < 50; ++t) {
        ++pairs.cases;
        const SL2Matrix A = random_sl2(rng), B = random_sl2(rng);
        for (const auto& p : all) {
          const auto q = sl2_act_pair(g, A, sl2_act_pair(g, B, p));
          if (q != sl2_act_pair(g, B * A, p))
            pairs.fail(c.name + ": right-action law fails at " + pair_str(p) + " for " + to_string(A) + ", " + to_string(B));
          if (centralizer(g, {q.g, q.h}) != centralizer(g, {p.g, p.h}))
            pairs.fail(c.name + ": SL2 changes the simultaneous centralizer of " + pair_str(p));
        }
      }
      ++pairs.cases;
      const auto fine = pair_orbits(g, PairAction::conjugation);
      const auto coarse = pair_orbits(g, PairAction::conjugation_and_sl2);
      std::map<CommutingPair, int> label;
      for (std::size_t i = 0; i < coarse.size(); ++i)
        for (const auto& m : coarse[i].members) label[m] = static_cast<int>(i);
      for (const auto& o : fine)
        for (const auto& m : o.members)
          if (label.at(m) != label.at(o.representative))
            pairs.fail(c.name + ": conjugation orbit of " + pair_str(o.representative) + " is split by SL2 orbits");
    });

    for (const auto& a : c.cocycles) {
      guarded(act, where(c, a), [&] {
        const GSet x = c.spaces.empty() ? GSet::point(G) : c.spaces.front().gset;
        const EllClass F = random_class(G, x, a.alpha, rng);
        std::uniform_int_distribution<int> pick(0, g.order() - 1);
        for (int t = 0; t < 6; ++t) {
          ++act.cases;
          const int k = pick(rng), k2 = pick(rng);
          const EllClass lhs = class_group_act(k2, class_group_act(k, F));
          const EllClass rhs = class_group_act(g.mul(k, k2), F);
          for (const auto& [p, comp] : F.components) {
            const CommutingPair q = conj_pair(g, p, g.mul(k, k2));
            Cyclotomic s(1);
            if (a.alpha) s = Cyclotomic::exp2pi(group_act_defect(*a.alpha, p, k, k2));
            for (const auto& [pt, f] : comp) {
              const int y = x.act(pt, g.mul(k, k2));
              if (!ell_equal(lhs.at(q, y), rhs.at(q, y).scaled(s)))
                act.fail(where(c, a) + ": acting by " + std::to_string(k) + " then " + std::to_string(k2) +
                         " differs from their product beyond the six-term defect at " + pair_str(q));
            }
            if (!a.alpha || a.alpha->values == Cochain3::zero(G).values)
              if (!s.is_rational() || s.rational() != 1) act.fail(where(c, a) + ": nonzero defect without twist");
          }
        }
      });
    }

    guarded(cst, c.name, [&] {
      for (const auto& sp : c.spaces) {
        ++cst.cases;
        const EllClass one = EllClass::constant(G, sp.gset, Cyclotomic(1));
        for (int k = 0; k < g.order(); ++k)
          if (!ell_equal(class_group_act(k, one), one)) cst.fail(c.name + " " + sp.label + ": constant class moved by " + std::to_string(k));
        if (!ell_equal(class_sl2_act(S, one), one) || !ell_equal(class_sl2_act(T, one), one))
          cst.fail(c.name + " " + sp.label + ": constant class moved by S or T");
        const EllClass F = random_class(G, sp.gset, std::nullopt, rng);
        const SL2Matrix A = random_sl2(rng), B = random_sl2(rng);
        if (!ell_equal(class_sl2_act(B, class_sl2_act(A, F)), class_sl2_act(B * A, F)))
          cst.fail(c.name + " " + sp.label + ": class SL2 action is not an action");
        if (!ell_equal(class_sl2_act(S.inverse(), class_sl2_act(S, F)), F))
          cst.fail(c.name + " " + sp.label + ": S then S^{-1} is not the identity");
      }
    });
  }

  // normal form soundness
  for (int t = 0; t < 500; ++t) {
    ++sound.cases;
    guarded(sound, "comparison " + std::to_string(t), [&] {
      std::vector<RawEllTerm> raw = random_raw(rng);
      std::vector<RawEllTerm> moved = raw;
      std::uniform_int_distribution<int> shift(-3, 3), sign(0, 1);
      for (auto& r : moved) {
        // left multiplication by +-T^j does not change the coset
        SL2Matrix u = power(T, 0);
        const int j = shift(rng);
        for (int i = 0; i < std::abs(j); ++i) u = u * (j > 0 ? T : T.inverse());
        if (sign(rng)) u = u * SL2Matrix{-1, 0, 0, -1};
        r.matrix = u * r.matrix;
      }
      std::shuffle(moved.begin(), moved.end(), rng);
      const EllFunction f1 = ell_normalize(raw), f2 = ell_normalize(moved);
      if (!ell_equal(f1, f2)) sound.fail("normal form differs after T-translation and reordering");
      for (int p = 0; p < 5; ++p) {
        const auto tau = random_tau(rng);
        double scale = 0;
        const auto direct = eval_raw(raw, tau, scale);
        const auto v1 = ell_eval(f1, tau, 1.0);
        if (!close(v1, ell_eval(f2, tau, 1.0)) || std::abs(v1 - direct) > 1e-9 * (1 + scale))
          sound.fail("numeric disagreement at tau = " + std::to_string(tau.real()) + "+" + std::to_string(tau.imag()) + "i");
      }
    });
  }
  const SL2Matrix st = S * T;
  for (int t = 0; t < 100; ++t) {
    ++rel.cases;
    const EllFunction f = random_ell_function(rng);
    if (!ell_equal(ell_sl2_act(power(S, 4), f), f) || !ell_equal(ell_sl2_act(power(st, 6), f), f))
      rel.fail("S^4 or (ST)^6 moves a function");
    const SL2Matrix A = random_sl2(rng), B = random_sl2(rng);
    if (!ell_equal(ell_sl2_act(B, ell_sl2_act(A, f)), ell_sl2_act(A * B, f)))
      rel.fail("function SL2 action fails the composition law");
    // action matches numeric precomposition
    const auto tau = random_tau(rng);
    const std::complex<double> at = (static_cast<double>(A.a) * tau + static_cast<double>(A.b)) /
                                    (static_cast<double>(A.c) * tau + static_cast<double>(A.d));
    if (!close(ell_eval(ell_sl2_act(A, f), tau, 1.0), ell_eval(f, at, 1.0)))
      rel.fail("symbolic SL2 action disagrees with numeric precomposition");
  }
  return {inv, pairs, act, cst, sound, rel};
}

std::vector<CheckResult> verify_kernel(const VerifyScope& scope) {
  CheckResult k{"kernel/triviality"}, w{"kernel/integral-weights"};
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    std::vector<SuiteCocycle> all = c.cocycles;
    all.push_back({"untwisted", std::nullopt});
    for (const auto& a : all)
      for (const auto& sp : c.spaces) {
        guarded(k, where(c, a) + " " + sp.label, [&] {
          const auto space = qell_basis(G, sp.gset, a.alpha);
          QEllClass everything;
          everything.space = space;
          for (const auto& b : space->basis) everything.add(b, 1);
          for (const auto& sec : space->sectors) {
            ++k.cases;
            const KernelReport rep = kernel_c(*space, sec.sigma);
            if (!rep.ok()) k.fail(where(c, a) + " " + sp.label + ": " + rep.witness);
            ++w.cases;
            restrict_c(q_multiply(everything, 1), sec.sigma);  // throws on non-integral weights
          }
        });
      }
  }
  return {k, w};
}

std::vector<CheckResult> verify_willerton(const VerifyScope& scope) {
  CheckResult r{"willerton/line-character"};
  for (const auto& c : scope.cases) {
    const FiniteGroup& g = *c.group.group;
    for (const auto& a : c.cocycles) {
      if (!a.alpha) continue;
      guarded(r, where(c, a), [&] {
        for (const auto& p : commuting_pairs(g)) {
          ++r.cases;
          const WillertonReport rep = verify_willerton_line(*a.alpha, p.g, p.h);
          if (!rep.ok)
            r.fail(where(c, a) + ": line character and twist character differ at " + pair_str(p) + ", h = " +
                   std::to_string(rep.witness));
          if (!is_homomorphism(g, line_character(*a.alpha, p.g, p.h)))
            r.fail(where(c, a) + ": line character at " + pair_str(p) + " is not a homomorphism");
        }
      });
    }
  }
  return {r};
}

std::vector<CheckResult> verify_sl2(const VerifyScope& scope) {
  CheckResult img{"chern/sl2-image"}, degen{"chern/degeneration"}, coh{"chern/conjugation-coherence"};
  const SL2Matrix mats[] = {SL2Matrix::S(), SL2Matrix::T()};
  for (const auto& c : scope.sl2_cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& a : c.cocycles)
      for (const auto& sp : c.spaces) {
        const std::string ctx = where(c, a) + " " + sp.label;
        guarded(img, ctx, [&] {
          const auto space = qell_basis(G, sp.gset, a.alpha);
          std::vector<QEllClass> span;
          QEllClass sum;
          sum.space = space;
          for (const auto& b : space->basis) {
            span.push_back(QEllClass::generator(space, b));
            sum.add(b, static_cast<long>(span.size()));
          }
          if (!span.empty()) span.push_back(q_multiply(sum, -1));
          for (const auto& cl : span) {
            for (const auto& A : mats) {
              ++img.cases;
              const ImageReport rep = check_image_preservation(A, cl);
              if (!rep.ok) img.fail(ctx + " " + to_string(A) + ": " + rep.mismatch);
            }
            ++coh.cases;
            const EllClass F = chern_character(cl);
            for (int k = 0; k < G->order(); ++k)
              if (!ell_equal(class_group_act(k, F), F))
                coh.fail(ctx + ": Chern image is not invariant under conjugation by " + std::to_string(k));
          }
        });
      }
  }
  for (const auto& c : scope.cases) {
    const GroupPtr& G = c.group.group;
    for (const auto& sp : c.spaces) {
      if (sp.label != "pt" && !scope.full_suite) continue;
      guarded(degen, c.name + " " + sp.label, [&] {
        const auto none = qell_basis(G, sp.gset, std::nullopt);
        const auto zero = qell_basis(G, sp.gset, Cochain3::zero(G));
        for (const auto& b : none->basis) {
          ++degen.cases;
          QEllClass cz;
          cz.space = zero;
          cz.add(b, 1);
          if (!ell_equal(chern_character(QEllClass::generator(none, b)), chern_character(cz)))
            degen.fail(c.name + " " + sp.label + ": zero twist changes the Chern image of sector " + std::to_string(b.sigma));
        }
      });
    }
  }
  return {img, degen, coh};
}

}  // namespace

GroupInput suite_group(const std::string& builtin_name) {
  return build_group({{"kind", "builtin"}, {"name", builtin_name}});
}

std::vector<GroupInput> suite_groups() {
  std::vector<GroupInput> out;
  for (const char* n : {"1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z8", "Z12", "V4", "Z2xZ2xZ2", "Z2xZ4", "S3", "D4",
                        "Q8", "D5", "D6", "A4", "S4", "Z3xZ3"})
    out.push_back(suite_group(n));
  return out;
}

std::vector<SuiteCocycle> suite_cocycles(const GroupInput& g, std::uint64_t seed, int shifts) {
  const GroupPtr& G = g.group;
  std::vector<SuiteCocycle> out{{"zero", Cochain3::zero(G)}};
  auto add = [&](const Json& spec, const std::string& label) {
    out.push_back({label, build_cocycle(spec, g)});
  };
  if (g.cyclic_factors.size() == 1) {
    const int n = g.cyclic_factors[0];
    std::set<int> ks;
    if (n > 1) ks = {1, n - 1};
    for (int k : ks) add({{"family", "cyclic"}, {"n", n}, {"k", k}}, "cyclic:" + std::to_string(n) + ":" + std::to_string(k));
  } else {
    for (int m : {2, 3, 4}) {
      if (find_surjection_to_cyclic(*G, m).empty()) continue;
      add({{"family", "cyclic"}, {"n", m}, {"k", 1}}, "cyclic:" + std::to_string(m) + ":1");
    }
  }
  if (g.cyclic_factors.size() >= 2) {
    add({{"family", "triple"}, {"i", 0}, {"j", 1}, {"k", 1}}, "triple:0:1:1");
    add({{"family", "triple"}, {"i", 0}, {"j", 0}, {"k", 1}}, "triple:0:0:1");
    if (g.cyclic_factors.size() >= 3) add({{"family", "triple"}, {"i", 0}, {"j", 1}, {"k", 2}}, "triple:0:1:2");
  }
  const SuiteCocycle base = out.back();
  std::mt19937_64 rng(mix(seed, 100 + G->order()));
  for (int s = 0; s < shifts; ++s)
    out.push_back({base.label + "+d(beta" + std::to_string(s) + ")",
                   *base.alpha + coboundary3(random_normalized_cochain2(G, 4, rng))});
  return out;
}

std::vector<SuiteHom> suite_homs(const GroupInput& g, std::uint64_t seed) {
  const GroupPtr& G = g.group;
  std::vector<SuiteHom> out;
  const auto own = suite_cocycles(g, seed, 1);
  out.push_back({"identity", GroupHom::identity(G), own});
  out.push_back({"trivial", GroupHom::trivial(G, G), own});
  for (const auto& cls : conjugacy_classes(*G)) {
    const int r = cls.representative;
    if (r == G->identity()) continue;
    const int o = G->element_order(r);
    const GroupInput z = suite_group("Z" + std::to_string(o));
    std::vector<int> image;
    for (int i = 0; i < o; ++i) image.push_back(G->pow(r, i));
    out.push_back({"inclusion <" + std::to_string(r) + ">", GroupHom::make(z.group, G, image), own});
  }
  for (int m : {2, 3, 4}) {
    auto image = find_surjection_to_cyclic(*G, m);
    if (image.empty()) continue;
    const GroupInput z = suite_group("Z" + std::to_string(m));
    out.push_back({"onto Z" + std::to_string(m), GroupHom::make(G, z.group, std::move(image)),
                   suite_cocycles(z, seed, 1)});
  }
  return out;
}

GSet coset_space(const GroupPtr& g, const std::vector<int>& subgroup) {
  const int n = g->order();
  std::vector<int> coset_of(n, -1), reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    for (int h : subgroup) coset_of[g->mul(h, x)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  std::vector<int> act;
  for (int r : reps)
    for (int k = 0; k < n; ++k) act.push_back(coset_of[g->mul(r, k)]);
  return GSet::make(g, static_cast<int>(reps.size()), std::move(act));
}

std::vector<SuiteSpace> suite_spaces(const GroupPtr& g) {
  std::vector<SuiteSpace> out{{"pt", GSet::point(g)}, {"regular", GSet::regular(g)}, {"trivial:2", GSet::trivial(g, 2)}};
  const auto classes = conjugacy_classes(*g);
  if (classes.size() > 1) {
    const int r = classes[1].representative;
    std::vector<int> h;
    for (int i = 0; i < g->element_order(r); ++i) h.push_back(g->pow(r, i));
    out.push_back({"cosets of <" + std::to_string(r) + ">", coset_space(g, h)});
  }
  return out;
}

VerifyScope default_scope(std::uint64_t seed) {
  VerifyScope s;
  s.seed = seed;
  s.full_suite = true;
  for (auto& g : suite_groups()) {
    VerifyCase c;
    c.name = g.spec["name"].get<std::string>();
    c.cocycles = suite_cocycles(g, seed);
    c.spaces = suite_spaces(g.group);
    c.group = std::move(g);
    s.cases.push_back(std::move(c));
  }
  for (int n : {7, 9, 10, 11}) s.table_groups.push_back(suite_group("Z" + std::to_string(n)));
  s.table_groups.push_back(suite_group("S5"));

  auto sl2_case = [&](const std::string& name, std::vector<std::pair<std::string, Json>> cocycles) {
    VerifyCase c;
    c.name = name;
    c.group = suite_group(name);
    for (const auto& [label, spec] : cocycles)
      c.cocycles.push_back({label, spec.is_null() ? std::nullopt : std::optional<Cochain3>(build_cocycle(spec, c.group))});
    c.spaces = {{"pt", GSet::point(c.group.group)}};
    s.sl2_cases.push_back(std::move(c));
  };
  const Json none;
  sl2_case("Z2", {{"untwisted", none}, {"cyclic:2:1", {{"family", "cyclic"}, {"n", 2}, {"k", 1}}}});
  sl2_case("Z4", {{"untwisted", none}, {"cyclic:4:1", {{"family", "cyclic"}, {"n", 4}, {"k", 1}}}});
  sl2_case("S3", {{"untwisted", none}, {"cyclic:2:1", {{"family", "cyclic"}, {"n", 2}, {"k", 1}}}});
  sl2_case("V4", {{"triple:0:1:1", {{"family", "triple"}, {"i", 0}, {"j", 1}, {"k", 1}}}});
  return s;
}

std::vector<std::string> verify_targets() {
  return {"cocycle", "transgression", "lemma", "characters", "qell", "devoto", "kernel", "willerton", "sl2"};
}

std::vector<CheckResult> run_verify(const std::string& target, const VerifyScope& scope) {
  if (target == "all") {
    std::vector<CheckResult> out;
    for (const auto& t : verify_targets()) {
      auto r = run_verify(t, scope);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  if (target == "cocycle") return verify_cocycle(scope);
  if (target == "transgression") return verify_transgression(scope);
  if (target == "lemma") return verify_lemma(scope);
  if (target == "characters") return verify_characters(scope);
  if (target == "qell") return verify_qell(scope);
  if (target == "devoto") return verify_devoto(scope);
  if (target == "kernel") return verify_kernel(scope);
  if (target == "willerton") return verify_willerton(scope);
  if (target == "sl2") return verify_sl2(scope);
  throw InputError("unknown verify target '" + target + "'");
}

Json random_shift_spec(const Json& base, const GroupPtr& g, int den, std::mt19937_64& rng) {
  const Cochain2 beta = random_normalized_cochain2(g, den, rng);
  Json entries = Json::array();
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      if (!beta(a, b).is_zero()) entries.push_back(Json::array({Json::array({a, b}), beta(a, b).str()}));
  return {{"kind", "coboundary"}, {"base", base}, {"beta", entries}};
}

SL2Matrix random_sl2(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), pick(0, 2);
  SL2Matrix m = SL2Matrix::identity();
  const int l = len(rng);
  for (int i = 0; i < l; ++i) {
    const int p = pick(rng);
    m = m * (p == 0 ? SL2Matrix::S() : p == 1 ? SL2Matrix::T() : SL2Matrix::T().inverse());
  }
  return m;
}

EllFunction random_ell_function(std::mt19937_64& rng) { return ell_normalize(random_raw(rng)); }

}  // namespace qell
