#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qell/character_table.hpp"
#include "qell/cocycles.hpp"

namespace qell {

/// The group of pairs (a, h), a in (1/n)Z/Z, h in H, with
/// (a,h)(b,k) = (a + b + theta(h,k), hk). Element (k/n, h) has index h*n + k.
struct CentralExtension {
  GroupPtr base;
  Cochain2 cocycle;  // on whole_group(base)
  int n = 1;
  GroupPtr total;
  GroupHom projection;

  int element(QZ a, int h) const;
  QZ fiber(int x) const { return QZ(x % n, n); }
  int base_of(int x) const { return x / n; }
  /// (1/n, e), the generator of the central Z/n.
  int central_generator() const { return element(QZ(1, n), base->identity()); }
};

/// theta is re-homed onto its carrier's own group; must be a normalized
/// 2-cocycle.
CentralExtension central_extension(const Cochain2& theta);

int extension_element_order(const CentralExtension& e, QZ a, int h);

/// The theta-projective irreducibles of H, or the ordinary irreducibles when
/// no twist is given. Values are read through the section h -> (0,h).
struct IrrepSystem {
  GroupPtr base;
  std::optional<CentralExtension> extension;
  std::shared_ptr<const CharacterTable> table;  // of the extension, or of base
  std::vector<int> rows;                        // rows of `table` that are kept

  int size() const { return static_cast<int>(rows.size()); }
  int degree(int i) const { return table->degrees[rows[i]]; }
  /// chi_i at the lift (0,h); h a local index of base.
  const Cyclotomic& value(int i, int h) const;
  /// chi_i at an arbitrary extension element (a,h): exp(2 pi i a) chi_i(0,h).
  Cyclotomic value(int i, QZ a, int h) const;
};

IrrepSystem ordinary_irreps(const GroupPtr& h);
IrrepSystem projective_irreps(const Cochain2& theta);

/// <chi, psi> over H for projective characters with the same cocycle, using
/// the section values; equals the extension inner product.
Cyclotomic projective_inner_product(const IrrepSystem& sys, const std::vector<Cyclotomic>& chi,
                                    const std::vector<Cyclotomic>& psi);

struct LambdaIrrep {
  int irrep = 0;  // index into the IrrepSystem
  int degree = 1;
  QZ x;           // q-degree in [0,1)
  Cyclotomic sigma_scalar;
};

struct GradedRepModule {
  Subgroup carrier;  // C, with g in C central
  int g = 0;         // ambient index
  std::optional<Cochain2> twist;
  std::shared_ptr<const IrrepSystem> irreps;
  std::vector<LambdaIrrep> basis;
  int N = 1;
};

/// theta (if given) lives on c. g must be central in c.
GradedRepModule lambda_basis(const Subgroup& c, int g, const std::optional<Cochain2>& theta);
/// Module for C_G(g) with theta = transgression of alpha (if given).
GradedRepModule lambda_basis(const GroupPtr& G, int g, const std::optional<Cochain2>& theta);

/// Unique x in [0,1) with v = deg * exp(2 pi i x), if v has that form with
/// den(x) | bound.
std::optional<QZ> scalar_phase(const Cyclotomic& v, int deg, int bound);

}  // namespace qell
