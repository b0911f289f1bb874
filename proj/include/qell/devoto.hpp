#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "qell/qell.hpp"

namespace qell {

/// Bottom row (c,d) of a matrix in SL2(Z), normalized to c > 0 or (0,1);
/// stands for the coset of the upper-triangular unipotents (and -I).
struct Coset {
  long c = 0;
  long d = 1;
  auto operator<=>(const Coset&) const = default;

  static Coset of(long c, long d);
  static Coset of(const SL2Matrix& m) { return of(m.c, m.d); }
  /// Some matrix with this bottom row.
  SL2Matrix matrix() const;
};

/// Finite sum of coeff * q^n precomposed with a Moebius transformation:
/// a term ((c,d), n) is exp(2 pi i n (a tau + b) / (c tau + d)), tau = t1/t2.
struct EllFunction {
  std::map<std::pair<Coset, long>, Cyclotomic> terms;

  static EllFunction constant(const Cyclotomic& v);
  static EllFunction monomial(long n, const Cyclotomic& coeff);

  void add_term(Coset coset, long n, const Cyclotomic& coeff);
  bool is_zero() const { return terms.empty(); }
  EllFunction scaled(const Cyclotomic& s) const;
  friend EllFunction operator+(const EllFunction& a, const EllFunction& b);
  bool operator==(const EllFunction& o) const { return terms == o.terms; }
};

struct RawEllTerm {
  SL2Matrix matrix;
  long n = 0;
  Cyclotomic coeff;
};

EllFunction ell_normalize(const std::vector<RawEllTerm>& raw);
/// Precompose with A: the result at tau is F(A tau). Left action:
/// ell_sl2_act(B, ell_sl2_act(A, F)) = ell_sl2_act(A * B, F) in the sense of
/// the term-wise coset map C -> C * A.
EllFunction ell_sl2_act(const SL2Matrix& a, const EllFunction& f);
std::complex<double> ell_eval(const EllFunction& f, std::complex<double> t1, std::complex<double> t2);
bool ell_equal(const EllFunction& a, const EllFunction& b);

/// Components over every commuting pair, each a function on X^{g,h}.
struct EllClass {
  GroupPtr group;
  GSet gset;
  std::optional<Cochain3> alpha;
  std::map<CommutingPair, std::map<int, EllFunction>> components;
  /// Line characters carried along on twisted output, per pair.
  std::map<CommutingPair, QZCharacter> lines;

  /// Zero at every pair and every fixed point.
  static EllClass zero(GroupPtr g, GSet x, std::optional<Cochain3> alpha);
  static EllClass constant(GroupPtr g, GSet x, const Cyclotomic& v);

  const EllFunction& at(CommutingPair p, int point) const;
  EllFunction& at(CommutingPair p, int point);
};

bool ell_equal(const EllClass& a, const EllClass& b);

/// (A.F)_p = ell_sl2_act(A^{-1}, F_{p.A}); F is fixed exactly when
/// F_{p.A}(tau) = F_p(A tau) for all pairs.
EllClass class_sl2_act(const SL2Matrix& a, const EllClass& f);

/// (k.F)_{p^k}(y.k) = exp(2 pi i gro_phase(alpha, g, h, k)) F_p(y), where
/// p^k = (k^{-1} g k, k^{-1} h k).
EllClass class_group_act(int k, const EllClass& f);

/// gro_phase(p,k) + gro_phase(p^k,k') - gro_phase(p,kk').
QZ group_act_defect(const Cochain3& alpha, CommutingPair p, int k, int k2);

struct InvariantRankEntry {
  CommutingPair representative;
  int orbit_size = 0;
  int rank = 0;
};

struct InvariantRankReport {
  std::vector<InvariantRankEntry> orbits;
  int total = 0;
};

/// Over a point: one entry per conjugation orbit of commuting pairs; an
/// orbit counts iff the twist character vanishes on C_G(g,h).
InvariantRankReport invariant_rank_pt(const GroupPtr& g, const std::optional<Cochain3>& alpha);

}  // namespace qell
