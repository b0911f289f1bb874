#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qell {

/// Raised for malformed user input (bad tables, bad specs, failed validation).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails; indicates a defect.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kDefaultGroupBound = 500;

/// A finite group stored as a dense Cayley table over element indices.
///
/// Row g, column h of the table holds g*h. The table is validated on
/// construction (closure, identity, inverses, associativity), so every
/// FiniteGroup in circulation is a group.
class FiniteGroup {
 public:
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                std::vector<std::string> labels = {});

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int g, int h) const { return table_[static_cast<std::size_t>(g) * order_ + h]; }
  int inv(int g) const { return inverses_[g]; }
  /// g^k for any integer k.
  int pow(int g, std::int64_t k) const;
  /// k^{-1} g k.
  int conj(int g, int k) const { return mul(mul(inv(k), g), k); }
  int element_order(int g) const { return orders_[g]; }
  /// Least common multiple of the element orders.
  int exponent() const;
  bool is_abelian() const;
  bool commute(int g, int h) const { return mul(g, h) == mul(h, g); }

  const std::string& label(int g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<std::vector<int>> table() const;

 private:
  FiniteGroup() = default;

  int order_ = 0;
  int identity_ = 0;
  std::vector<int> table_;
  std::vector<int> inverses_;
  std::vector<int> orders_;
  std::vector<std::string> labels_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Group homomorphism given by its values on element indices.
struct GroupHom {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<int> image;

  int operator()(int g) const { return image[g]; }

  /// Throws InputError unless image is a homomorphism.
  static GroupHom make(GroupPtr domain, GroupPtr codomain, std::vector<int> image);
  static GroupHom identity(GroupPtr g);
  static GroupHom trivial(GroupPtr domain, GroupPtr codomain);
};

/// A subgroup of an ambient group together with its own local Cayley table.
/// Local indices follow the ascending order of the ambient indices.
struct Subgroup {
  GroupPtr ambient;
  GroupPtr group;
  std::vector<int> embedding;  // local -> ambient
  std::vector<int> local_of;   // ambient -> local, -1 outside

  int to_local(int g) const { return local_of[g]; }
  int to_ambient(int l) const { return embedding[l]; }
  bool contains(int g) const { return local_of[g] >= 0; }
  int order() const { return static_cast<int>(embedding.size()); }
};

/// Throws InputError if the elements are not closed under multiplication.
Subgroup make_subgroup(const GroupPtr& ambient, std::vector<int> elements);
Subgroup whole_group(const GroupPtr& g);
GroupHom inclusion(const Subgroup& s);

// ---------------------------------------------------------------------------
// Construction

/// Named builtins: "1", "Z<n>", "C<n>", "D<n>" (order 2n), "S<n>" (n<=5),
/// "A4", "Q8", "V4", and 'x'-separated products such as "Z2xZ2".
FiniteGroup builtin_group(const std::string& name);
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);
FiniteGroup symmetric_group(int n);
FiniteGroup quaternion_group();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Closure of the given permutations of {0..degree-1}. The product g*h
/// applies g first, then h.
FiniteGroup permutation_group(int degree, const std::vector<std::vector<int>>& gens,
                              int size_bound = kDefaultGroupBound);

// ---------------------------------------------------------------------------
// Conjugacy and centralizers

struct ConjugacyClass {
  int representative;
  std::vector<int> members;
};

/// Partition into classes; representatives are least indices; classes are
/// ordered by representative.
std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g);
/// class index of every element, for the partition above.
std::vector<int> class_index(const FiniteGroup& g, const std::vector<ConjugacyClass>& classes);

std::vector<int> centralizer(const FiniteGroup& g, const std::vector<int>& elems);
Subgroup centralizer_subgroup(const GroupPtr& g, const std::vector<int>& elems);

/// Least k with k^{-1} from k = to; -1 if none.
int find_conjugator(const FiniteGroup& g, int from, int to);
/// All k with k^{-1} from k = to, ascending.
std::vector<int> conjugators(const FiniteGroup& g, int from, int to);

/// Greedy generating set (ascending indices).
std::vector<int> generating_set(const FiniteGroup& g);
/// A surjective homomorphism onto Z/n if one exists (deterministic choice).
std::vector<int> find_surjection_to_cyclic(const FiniteGroup& g, int n);

// ---------------------------------------------------------------------------
// Commuting pairs and SL2(Z)

struct CommutingPair {
  int g = 0;
  int h = 0;
  auto operator<=>(const CommutingPair&) const = default;
};

std::vector<CommutingPair> commuting_pairs(const FiniteGroup& g);

struct SL2Matrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static SL2Matrix make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static SL2Matrix identity() { return {1, 0, 0, 1}; }
  static SL2Matrix S() { return {0, -1, 1, 0}; }
  static SL2Matrix T() { return {1, 1, 0, 1}; }

  SL2Matrix inverse() const { return {d, -b, -c, a}; }
  bool operator==(const SL2Matrix&) const = default;
};

SL2Matrix operator*(const SL2Matrix& x, const SL2Matrix& y);
std::string to_string(const SL2Matrix& m);

/// (g,h).A = (g^d h^{-b}, g^{-c} h^a): a right action on commuting pairs.
CommutingPair sl2_act_pair(const FiniteGroup& g, const SL2Matrix& a, CommutingPair p);

/// (g,h).k = (k^{-1} g k, k^{-1} h k).
inline CommutingPair conj_pair(const FiniteGroup& g, CommutingPair p, int k) {
  return {g.conj(p.g, k), g.conj(p.h, k)};
}

enum class PairAction { conjugation, conjugation_and_sl2 };

struct PairOrbit {
  CommutingPair representative;
  std::vector<CommutingPair> members;
  std::vector<int> stabilizer;  // C_G(g,h) of the representative
};

std::vector<PairOrbit> pair_orbits(const FiniteGroup& g, PairAction acting);

}  // namespace qell
