#pragma once

#include <memory>
#include <vector>

#include "qell/cyclotomic.hpp"
#include "qell/finite_group.hpp"
#include "qell/qz.hpp"

namespace qell {

struct CharacterTable {
  GroupPtr group;
  std::vector<ConjugacyClass> classes;
  std::vector<int> class_of;              // element -> class
  std::vector<std::vector<Cyclotomic>> rows;  // rows[i][class]
  std::vector<int> degrees;

  int size() const { return static_cast<int>(rows.size()); }
  const Cyclotomic& value(int row, int element) const { return rows[row][class_of[element]]; }
};

/// Dixon's modular method: simultaneous eigenvectors of the class
/// coefficient matrices over F_p, p = 1 mod exponent, lifted back to
/// cyclotomics through eigenvalue multiplicities. Rows are sorted by degree,
/// then by their values (argument, modulus, canonical form). Results are
/// cached by Cayley table.
std::shared_ptr<const CharacterTable> character_table(const GroupPtr& g);

/// Rows of the table of an abelian group with chi(z) = exp(2 pi i x); the
/// same rows, in the same order, as the full table. Not cached.
std::shared_ptr<const CharacterTable> abelian_characters_at(const GroupPtr& g, int z, const QZ& x);

/// <chi, psi> = 1/|G| sum chi(g) conj(psi(g)), exactly.
Cyclotomic inner_product(const CharacterTable& t, const std::vector<Cyclotomic>& chi,
                         const std::vector<Cyclotomic>& psi);

struct OrthogonalityReport {
  bool rows_ok = true;
  bool columns_ok = true;
  bool degree_sum_ok = true;
  bool count_ok = true;
  bool ok() const { return rows_ok && columns_ok && degree_sum_ok && count_ok; }
};

OrthogonalityReport check_orthogonality(const CharacterTable& t);

}  // namespace qell
