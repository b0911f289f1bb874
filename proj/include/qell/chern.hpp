#pragma once

#include <string>
#include <vector>

#include "qell/devoto.hpp"

namespace qell {

struct SectorTerm {
  int orbit_point = 0;
  int irrep = 0;
  long n = 0;  // integral q-weight after pulling back along t -> N t
  long coeff = 0;
};

struct SectorRep {
  int sigma = 0;
  int N = 1;
  std::vector<SectorTerm> terms;
};

/// The sigma-part of c pulled back along t -> N t: a generator of degree x
/// with external shift k gets weight N x + N k.
SectorRep restrict_c(const QEllClass& c, int sigma);

struct KernelElement {
  long m = 0;
  QZ t;     // -m/N
  QZ a;     // theta(s,s) + ... + theta(s,s^{m-1})
  int g = 0;  // s^m
};

struct KernelReport {
  int N = 1;
  std::vector<KernelElement> elements;
  bool acts_trivially = true;  // on the fixed points of sigma
  bool fibers_trivial = true;  // every sector generator sees the degree
  std::string witness;
  bool ok() const { return acts_trivially && fibers_trivial; }
};

/// Kernel of the sigma-sector pullback, checked against every generator of
/// the sector of `space`.
KernelReport kernel_c(const QEllSpace& space, int sigma);

/// h -> theta_s(t,h) - theta_s(h,t) on C_G(s,t), theta_s = transgression.
QZCharacter line_character(const Cochain3& alpha, int s, int t);

struct WillertonReport {
  bool ok = true;
  int witness = -1;
};

/// The twisted Atiyah-Segal line against the six-term twist character.
WillertonReport verify_willerton_line(const Cochain3& alpha, int s, int t);

/// Atiyah-Segal values of a sector at (sigma, tau), per point of X^{sigma,tau}.
std::map<int, EllFunction> atiyah_segal(const QEllSpace& space, const SectorRep& sector, int tau);

/// Full pipeline: restriction, weight decomposition, Atiyah-Segal values and
/// the (identity) Chern stage on finite sets; pairs outside the
/// representative sectors are filled through the least conjugator.
EllClass chern_character(const QEllClass& c);

struct ImageReport {
  bool ok = true;
  int pairs = 0;
  std::string mismatch;
};

/// class_sl2_act(A, ch(c)) against an independent evaluation of the
/// transformed composite at every pair.
ImageReport check_image_preservation(const SL2Matrix& a, const QEllClass& c);

}  // namespace qell
