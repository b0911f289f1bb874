#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

namespace qell {

/// An element of Q/Z, stored as a reduced fraction p/q with 0 <= p < q.
/// Models U(1) additively: the value v stands for exp(2 pi i v).
class QZ {
 public:
  constexpr QZ() = default;
  QZ(std::int64_t num, std::int64_t den);

  static QZ parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator-() const { return QZ(-num_, den_); }
  friend QZ operator+(QZ a, QZ b);
  friend QZ operator-(QZ a, QZ b) { return a + (-b); }
  QZ& operator+=(QZ o) { return *this = *this + o; }
  QZ& operator-=(QZ o) { return *this = *this - o; }
  friend QZ operator*(std::int64_t k, QZ a);

  bool operator==(const QZ&) const = default;
  /// Order by value in [0,1).
  std::strong_ordering operator<=>(const QZ& o) const;

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace qell
