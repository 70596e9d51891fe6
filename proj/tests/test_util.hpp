#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qtk/circuit.hpp"
#include "qtk/simulator.hpp"
#include "qtk/state.hpp"

namespace qtk::testing {

inline std::uint64_t index_of(const std::vector<int>& digits) {
  std::uint64_t idx = 0, p = 1;
  for (int d : digits) {
    idx += static_cast<std::uint64_t>(d) * p;
    p *= 3;
  }
  return idx;
}

inline std::vector<int> digits_of(std::uint64_t idx, int width) {
  std::vector<int> d(width);
  for (int i = 0; i < width; ++i) {
    d[i] = static_cast<int>(idx % 3);
    idx /= 3;
  }
  return d;
}

// Runs a measurement-free circuit on a basis input; returns the unique output basis state
// and its amplitude magnitude (1 for a permutation action).
struct BasisImage {
  std::vector<int> digits;
  double magnitude;
  std::size_t support;
};

inline BasisImage basis_image(const Circuit& c, const std::vector<int>& in) {
  SparseState s = SparseState::basis_digits(in);
  auto rec = run(c, s, 0);
  BasisImage out{{}, 0.0, rec.state.entries().size()};
  for (const auto& [idx, a] : rec.state.entries()) {
    if (std::abs(a) > out.magnitude) {
      out.magnitude = std::abs(a);
      out.digits = digits_of(idx, c.width());
    }
  }
  return out;
}

// Every combination of values in `radix` per wire.
inline void for_each_input(const std::vector<int>& radix, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(radix.size(), 0);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == radix[i]) v[i++] = 0;
    if (i == v.size()) return;
  }
}

}  // namespace qtk::testing
