#include "qtk/qft.hpp"

#include <string>

#include "qtk/errors.hpp"
#include "qtk/gate_registry.hpp"

namespace qtk {

namespace {

// Controlled phase |c>|t> -> e^{2 pi i c t / radix^level}|c>|t>.
std::string controlled_phase(int radix, int level) {
  const std::string denom = std::to_string(radix == 3 ? pow3u(level) : (std::uint64_t{1} << level));
  return radix == 3 ? "L(PH[1/" + denom + "])" : "C1(BP[1/" + denom + "])";
}

Circuit build(int radix, int n, double delta) {
  if (n < 1) throw SizeError("transform needs at least one wire");
  if ((radix == 3 && n > 38) || (radix == 2 && n > 62)) throw SizeError("transform register too wide");
  Circuit c(n);
  const double threshold = delta > 0.0 ? delta / n : 0.0;
  const Matrix id = Matrix::Identity(9, 9);
  for (int t = n - 1; t >= 0; --t) {
    c.gate(radix == 3 ? "H" : "BH", {t});
    for (int s = t - 1; s >= 0; --s) {
      const std::string name = controlled_phase(radix, t - s + 1);
      if (threshold > 0.0 && spectral_norm(gate(name)->matrix.matrix() - id) < threshold) continue;
      c.gate(name, {s, t});
    }
  }
  for (int i = 0; i < n / 2; ++i) c.gate("TSWAP", {i, n - 1 - i});
  return c;
}

}  // namespace

Circuit qft3n(int n, double delta) { return build(3, n, delta); }
Circuit qft2n(int n, double delta) { return build(2, n, delta); }

Matrix dft_matrix(int radix, int n) {
  const std::uint64_t size = radix == 3 ? pow3u(n) : (std::uint64_t{1} << n);
  Matrix m(size, size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (std::uint64_t j = 0; j < size; ++j)
    for (std::uint64_t k = 0; k < size; ++k)
      m(k, j) = scale * root_of_unity(static_cast<std::int64_t>((j * k) % size), size);
  return m;
}

Matrix binary_block(const Matrix& u, int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> index(size);
  for (std::uint64_t v = 0; v < size; ++v) {
    std::uint64_t idx = 0, p = 1;
    for (int i = 0; i < n; ++i, p *= 3) idx += ((v >> i) & 1u) * p;
    index[v] = idx;
  }
  Matrix b(size, size);
  for (std::uint64_t r = 0; r < size; ++r)
    for (std::uint64_t c = 0; c < size; ++c) b(r, c) = u(index[r], index[c]);
  return b;
}

}  // namespace qtk
