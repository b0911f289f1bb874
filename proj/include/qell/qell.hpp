#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "qell/extension.hpp"

namespace qell {

/// A finite right G-set: act(x, g) = x.g with (x.g).h = x.(gh).
struct GSet {
  GroupPtr group;
  int size = 0;
  std::vector<int> action;  // action[x * |G| + g]

  int act(int x, int g) const { return action[static_cast<std::size_t>(x) * group->order() + g]; }

  /// Validates the action axioms.
  static GSet make(GroupPtr g, int size, std::vector<int> action);
  static GSet point(GroupPtr g) { return trivial(std::move(g), 1); }
  static GSet trivial(GroupPtr g, int n);
  /// G acting on itself by right translation.
  static GSet regular(GroupPtr g);
};

/// Disjoint union; points of b follow those of a.
GSet disjoint_union(const GSet& a, const GSet& b);

struct FixedSet {
  Subgroup acting;          // centralizer of the listed elements
  std::vector<int> points;  // ascending
};

FixedSet fixed_points(const GSet& x, const std::vector<int>& elems);

struct Orbit {
  int point = 0;             // least member
  std::vector<int> members;  // ascending
  Subgroup stabilizer;       // inside the ambient group
};

/// Orbits of `acting` on the given invariant subset of points.
std::vector<Orbit> orbits(const GSet& x, const std::vector<int>& points, const Subgroup& acting);

struct QEllOrbit {
  Orbit orbit;
  GradedRepModule module;
};

struct QEllSector {
  int sigma = 0;
  Subgroup centralizer;
  std::vector<QEllOrbit> orbits;
};

struct QEllBasisElement {
  int sigma = 0;
  int orbit_point = 0;
  int irrep = 0;
  int q_shift = 0;
  auto operator<=>(const QEllBasisElement&) const = default;
};

/// All sectors of QEll (or its twisted form) for a finite G-set, one per
/// conjugacy class of G, in representative order.
struct QEllSpace {
  GroupPtr group;
  GSet gset;
  std::optional<Cochain3> alpha;
  std::vector<QEllSector> sectors;
  std::vector<QEllBasisElement> basis;  // q_shift = 0 generators

  const QEllSector& sector(int sigma) const;
  const QEllOrbit& orbit(int sigma, int point) const;
  const LambdaIrrep& irrep(const QEllBasisElement& b) const;
  QZ degree(const QEllBasisElement& b) const { return irrep(b).x; }
};

using QEllSpacePtr = std::shared_ptr<const QEllSpace>;

/// alpha must be a normalized 3-cocycle on G when given.
QEllSpacePtr qell_basis(const GroupPtr& g, const GSet& x, const std::optional<Cochain3>& alpha);

struct RankSector {
  int sigma = 0;
  std::map<QZ, int> degrees;  // fractional degree -> multiplicity
  int rank = 0;
};

struct RankReport {
  std::vector<RankSector> sectors;
  int total = 0;
  std::vector<QZ> all_degrees() const;  // sorted, with repetition
};

RankReport qell_rank_report(const QEllSpace& s);

/// A formal Z-combination of basis elements with arbitrary q-shifts.
struct QEllClass {
  QEllSpacePtr space;
  std::map<QEllBasisElement, long> terms;

  static QEllClass generator(QEllSpacePtr s, const QEllBasisElement& b, long coeff = 1);
  void add(const QEllBasisElement& b, long coeff);
  bool operator==(const QEllClass& o) const { return terms == o.terms; }
};

QEllClass q_multiply(const QEllClass& c, int k);

/// phi: X -> Y with phi(x.g) = phi(x).f(g).
struct EquivariantMap {
  GroupHom f;
  GSet source;
  GSet target;
  std::vector<int> phi;

  static EquivariantMap make(GroupHom f, GSet source, GSet target, std::vector<int> phi);
};

/// Pull a class over (H, Y, alpha) back to (G, X, f^* alpha).
QEllClass restrict_class(const EquivariantMap& m, const QEllClass& c);

/// Character of the fiber of a sector component at the point y of the
/// orbit, evaluated on t in the stabilizer of y in C_G(sigma); twisted
/// characters are transported from the orbit representative along the
/// least u in C_G(sigma) with rep.u = y.
Cyclotomic fiber_character(const QEllSpace& s, int sigma, const QEllOrbit& o, int irrep, int y,
                           int t);

}  // namespace qell
