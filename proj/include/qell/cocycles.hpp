#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qell/finite_group.hpp"
#include "qell/qz.hpp"

namespace qell {

/// A Q/Z-valued function on G^3, stored densely.
struct Cochain3 {
  GroupPtr group;
  std::vector<QZ> values;

  static Cochain3 zero(GroupPtr g);
  QZ operator()(int a, int b, int c) const {
    const std::size_t n = group->order();
    return values[(a * n + b) * n + c];
  }
  QZ& at(int a, int b, int c) {
    const std::size_t n = group->order();
    return values[(a * n + b) * n + c];
  }
  bool operator==(const Cochain3& o) const { return group == o.group && values == o.values; }
};

/// A Q/Z-valued function on H^2 where H is a subgroup of some ambient group.
/// Indexing through operator() uses H's local indices; `ambient` uses the
/// ambient indices.
struct Cochain2 {
  Subgroup carrier;
  std::vector<QZ> values;

  static Cochain2 zero(const Subgroup& h);
  static Cochain2 zero(const GroupPtr& g) { return zero(whole_group(g)); }

  int size() const { return carrier.order(); }
  QZ operator()(int a, int b) const { return values[static_cast<std::size_t>(a) * size() + b]; }
  QZ& at(int a, int b) { return values[static_cast<std::size_t>(a) * size() + b]; }
  QZ ambient(int g, int h) const { return (*this)(carrier.to_local(g), carrier.to_local(h)); }
  const FiniteGroup& group() const { return *carrier.group; }

  /// Equal carriers (as subsets of the same ambient group) and equal values.
  bool same_as(const Cochain2& o) const;
};

/// A Q/Z-valued function on a listed set of elements; used for characters
/// C_G(g,h) -> Q/Z.
struct QZCharacter {
  std::vector<int> elements;  // ambient indices, ascending
  std::vector<QZ> values;

  QZ at(int g) const;
  bool is_zero() const;
  bool operator==(const QZCharacter&) const = default;
};

struct Cocycle3Report {
  bool ok = true;
  std::vector<int> witness;  // failing (g0,g1,g2,g3)
};

struct Cocycle2Report {
  bool ok = true;
  std::vector<int> witness;  // failing (g,h,k), local indices
};

/// The additive 3-cocycle condition, checked over all quadruples.
Cocycle3Report check_cocycle3(const Cochain3& alpha);
bool check_normalized(const Cochain3& alpha);
bool check_normalized(const Cochain2& theta);
Cocycle2Report check_cocycle2(const Cochain2& theta);

/// (d beta)(g,h,k) = beta(h,k) - beta(gh,k) + beta(g,hk) - beta(g,h). beta must
/// live on the whole group.
Cochain3 coboundary3(const Cochain2& beta);
/// (d f)(g,h) = f(h) - f(gh) + f(g), for f indexed by local indices of h.
Cochain2 coboundary2(const Subgroup& h, const std::vector<QZ>& f);

/// alpha(a,b,c) = k a floor((b+c)/n) / n on Z/n (element index = residue).
Cochain3 cyclic_cocycle(int n, int k);
/// alpha(a,b,c) = a_i b_j c_k / m on a product of cyclic groups with the
/// given factor orders (element index in mixed radix, first factor most
/// significant), m = gcd of the three factor orders involved.
Cochain3 triple_product_cocycle(GroupPtr g, const std::vector<int>& factor_orders, int i, int j,
                                int k);

/// Willerton's transgression to C_G(x):
/// theta_x(g,h) = alpha(g,h,x) + alpha(x,g,h) - alpha(g,x,h).
/// Throws InputError unless alpha is a normalized 3-cocycle.
Cochain2 transgress(const Cochain3& alpha, int x);
/// Same formula without re-validating alpha.
Cochain2 transgress_unchecked(const Cochain3& alpha, int x);
/// Same formula on an arbitrary subgroup of C_G(x).
Cochain2 transgress_on(const Cochain3& alpha, int x, const Subgroup& carrier);

/// The transgression extended to the inertia groupoid, for the composable
/// morphisms x --g--> g^{-1}xg --h--> (gh)^{-1}x(gh):
/// alpha(g,h,x^{gh}) + alpha(x,g,h) - alpha(g,x^g,h). Equals theta_x(g,h) on
/// C_G(x).
QZ groupoid_cocycle(const Cochain3& alpha, int x, int g, int h);
/// Phase picked up by a twisted character when it is moved along the
/// morphism v out of object x: the value at t (an automorphism of x^v) is
/// exp(2 pi i * this) times the value at v t v^{-1}.
QZ transport_phase(const Cochain3& alpha, int x, int v, int t);

/// h -> alpha(g2,h,g1)+alpha(h,g1,g2)+alpha(g1,g2,h)
///      -alpha(h,g2,g1)-alpha(g1,h,g2)-alpha(g2,g1,h)
/// for h in C_G(g1,g2).
QZCharacter gro_character(const Cochain3& alpha, int g1, int g2);
/// The six-term expression for arbitrary h (no centralizing requirement).
QZ gro_phase(const Cochain3& alpha, int g1, int g2, int h);

bool is_homomorphism(const FiniteGroup& g, const QZCharacter& chi);

/// Least n with n*c = 0 pointwise.
std::int64_t value_order(const Cochain2& c);
std::int64_t value_order(const Cochain3& c);

/// (f^*alpha)(a,b,c) = alpha(f a, f b, f c).
Cochain3 pullback_cochain(const GroupHom& f, const Cochain3& alpha);
/// f maps into the ambient group of c's carrier; its image must lie in the
/// carrier. The result lives on the whole domain of f.
Cochain2 pullback_cochain(const GroupHom& f, const Cochain2& c);
/// Restrict f to the subgroup s of its domain (result has domain s.group).
GroupHom restrict_domain(const GroupHom& f, const Subgroup& s);

/// Pointwise restriction to a subgroup h of the same ambient group.
Cochain2 restrict_cochain(const Cochain2& c, const Subgroup& h);
/// Re-home a cochain on a subgroup as a cochain on that subgroup's own group
/// (carrier becomes whole_group(carrier.group)).
Cochain2 localize(const Cochain2& c);

Cochain3 operator+(const Cochain3& a, const Cochain3& b);
Cochain2 operator+(const Cochain2& a, const Cochain2& b);
Cochain2 operator-(const Cochain2& a, const Cochain2& b);

/// A 1-cochain f with d f = delta, f(e) = 0, if one exists. Values are
/// searched in (1/M)Z/Z with M = value_order(delta) * exponent.
std::optional<std::vector<QZ>> find_primitive(const Cochain2& delta);

/// Random normalized 2-cochain on the whole group with values in (1/den)Z/Z.
Cochain2 random_normalized_cochain2(const GroupPtr& g, int den, std::mt19937_64& rng);

}  // namespace qell
