#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qell/qz.hpp"

namespace qell {

/// An element of Q(zeta_m), kept in canonical form: m is the conductor of
/// the element (m != 2 mod 4) and the coefficients are taken in the power
/// basis 1, zeta_m, ..., zeta_m^{phi(m)-1}.
class Cyclotomic {
 public:
  Cyclotomic() : coeffs_(1, 0) {}
  Cyclotomic(long v) : coeffs_(1, v) {}  // NOLINT: integers convert implicitly
  explicit Cyclotomic(const mpq_class& v) : coeffs_(1, v) {}

  /// zeta_m^k.
  static Cyclotomic root(int m, long k);
  /// exp(2 pi i x).
  static Cyclotomic exp2pi(QZ x) { return root(static_cast<int>(x.den()), x.num()); }
  /// sum_k raw[k] zeta_m^k, exponents taken mod m.
  static Cyclotomic from_exponents(int m, const std::map<long, mpq_class>& raw);

  int modulus() const { return m_; }
  /// Power-basis coefficients, length phi(modulus()).
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return m_ == 1; }
  mpq_class rational() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic scaled(const mpq_class& r) const;

  /// Galois action zeta -> zeta^k (k coprime to the modulus).
  Cyclotomic galois(long k) const;
  Cyclotomic conj() const { return galois(-1); }

  std::complex<double> eval_numeric() const;

  bool operator==(const Cyclotomic& o) const { return m_ == o.m_ && coeffs_ == o.coeffs_; }
  /// Total order on canonical forms (not numeric order).
  friend bool canonical_less(const Cyclotomic& a, const Cyclotomic& b);

  std::string str() const;

 private:
  Cyclotomic(int m, std::vector<mpq_class> c) : m_(m), coeffs_(std::move(c)) {}
  /// Reduce a full exponent vector (length m) mod Phi_m and shrink m.
  static Cyclotomic from_raw(int m, std::vector<mpq_class> raw);
  /// Raw exponent vector (length l) of this element inside Q(zeta_l), m | l.
  std::vector<mpq_class> lift(int l) const;

  int m_ = 1;
  std::vector<mpq_class> coeffs_;
};

int euler_phi(int n);
/// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int n);

}  // namespace qell
