#include "qtk/phase.hpp"

#include <cmath>
#include <numeric>

namespace qtk {

cplx root_of_unity(std::int64_t k, std::int64_t n) {
  if (n < 0) {
    n = -n;
    k = -k;
  }
  k %= n;
  if (k < 0) k += n;
  const std::int64_t g = std::gcd(k, n);
  k /= g;
  n /= g;
  if (k == 0) return {1.0, 0.0};
  if (n == 2) return {-1.0, 0.0};
  if (n == 4) return k == 1 ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

PhaseConstant PhaseConstant::operator*(PhaseConstant o) const {
  const std::int64_t den = std::lcm(den_, o.den_);
  std::int64_t num = num_ * (den / den_) + o.num_ * (den / o.den_);
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

PhaseConstant PhaseConstant::pow(std::int64_t e) const {
  std::int64_t num = (num_ * e) % den_;
  if (num < 0) num += den_;
  const std::int64_t g = std::gcd(num, den_);
  return {num / g, den_ / g};
}

}  // namespace qtk
