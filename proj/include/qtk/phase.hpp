#pragma once

#include <complex>
#include <cstdint>

namespace qtk {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// e^{2 pi i k / n}, built from the reduced angle; quarter turns are exact.
cplx root_of_unity(std::int64_t k, std::int64_t n);

// A phase known by its rational angle (in turns) so catalog entries avoid product chains.
class PhaseConstant {
 public:
  constexpr PhaseConstant(std::int64_t turns_num, std::int64_t turns_den)
      : num_(turns_num), den_(turns_den) {}

  static constexpr PhaseConstant omega3(std::int64_t k) { return {k, 3}; }
  static constexpr PhaseConstant omega9(std::int64_t k) { return {k, 9}; }
  static constexpr PhaseConstant zeta(std::int64_t k, std::int64_t n) { return {k, n}; }

  cplx value() const { return root_of_unity(num_, den_); }
  constexpr std::int64_t numerator() const { return num_; }
  constexpr std::int64_t denominator() const { return den_; }

  PhaseConstant operator*(PhaseConstant o) const;
  PhaseConstant pow(std::int64_t e) const;

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

}  // namespace qtk
