#include "qell/qz.hpp"

#include <stdexcept>

#include "qell/finite_group.hpp"

namespace qell {

QZ::QZ(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

QZ QZ::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw InputError("bad fraction '" + text + "'");
      return QZ(v, 1);
    }
    const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
    const long long p = std::stoll(a, &used);
    if (used != a.size()) throw InputError("bad fraction '" + text + "'");
    const long long q = std::stoll(b, &used);
    if (used != b.size() || q <= 0) throw InputError("bad fraction '" + text + "'");
    return QZ(p, q);
  } catch (const std::logic_error&) {
    throw InputError("bad fraction '" + text + "'");
  }
}

QZ operator+(QZ a, QZ b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return QZ(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

QZ operator*(std::int64_t k, QZ a) {
  k %= a.den_;
  return QZ(k * a.num_, a.den_);
}

std::strong_ordering QZ::operator<=>(const QZ& o) const {
  const __int128 l = static_cast<__int128>(num_) * o.den_;
  const __int128 r = static_cast<__int128>(o.num_) * den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace qell
