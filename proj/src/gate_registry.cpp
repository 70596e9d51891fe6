#include "qtk/gate_registry.hpp"

#include <cctype>
#include <mutex>
#include <unordered_map>

#include "qtk/errors.hpp"

namespace qtk {

namespace {

struct Parsed {
  GateMatrix m;
  int p9 = 0;
  int p9_depth = 0;
  int r = 0;
  std::string tag;
  Injectable inj = Injectable::none;
  bool is_sum = false;
};

GateMatrix lambda_sum_matrix() {
  Matrix m = Matrix::Zero(27, 27);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m(i + 3 * j + 9 * ((k + i * j) % 3), i + 3 * j + 9 * k) = 1.0;
  return {3, m};
}

class NameParser {
 public:
  explicit NameParser(std::string_view s) : s_(s) {}

  Parsed parse() {
    Parsed p = expr();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw CatalogError("bad gate name '" + std::string(s_) + "': " + why);
  }

  bool eat(std::string_view tok) {
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && s_[start] == '-')) fail("expected integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '2') ++pos_;
    if (pos_ == start) fail("expected trit string");
    return std::string(s_.substr(start, pos_ - start));
  }

  void suffixes(Parsed& p) {
    while (eat("dg")) {
      p.m = p.m.adjoint();
      if (p.inj == Injectable::p9)
        p.inj = Injectable::p9_dagger;
      else if (p.inj == Injectable::p9_dagger)
        p.inj = Injectable::p9;
    }
  }

  Parsed expr() {
    for (int level = 0; level < 3; ++level) {
      const std::string prefix = "C" + std::to_string(level) + "(";
      if (eat(prefix)) return control(Binary{level});
    }
    if (eat("L(")) return control(Ternary{});
    return atom();
  }

  Parsed control(ControlMode mode) {
    Parsed inner = expr();
    if (!eat(")")) fail("expected ')'");
    Parsed p{controlled(inner.m, mode)};
    if (inner.is_sum && std::holds_alternative<Binary>(mode)) {
      p.p9 = 15;
      p.p9_depth = 5;
      p.tag = "C_f(SUM)";
    }
    suffixes(p);
    return p;
  }

  Parsed atom() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isupper(static_cast<unsigned char>(s_[pos_])) ||
                                std::isdigit(static_cast<unsigned char>(s_[pos_]))))
      ++pos_;
    const std::string id(s_.substr(start, pos_ - start));
    if (id.empty()) fail("expected gate identifier");
    Parsed p{identity_gate(1)};
    if (id == "PAULI" || id == "PH" || id == "BP" || id == "TAU") {
      if (!eat("[")) fail("expected '['");
      if (id == "PAULI") {
        const auto a = integer();
        if (!eat(",")) fail("expected ','");
        const auto b = integer();
        p.m = pauli(static_cast<int>(a), static_cast<int>(b));
      } else if (id == "TAU") {
        const std::string a = digits();
        if (!eat(",")) fail("expected ','");
        const std::string b = digits();
        if (a.size() != b.size()) fail("reflection levels differ in length");
        std::uint64_t ja = 0, jb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          ja += static_cast<std::uint64_t>(a[i] - '0') * pow3u(static_cast<int>(i));
          jb += static_cast<std::uint64_t>(b[i] - '0') * pow3u(static_cast<int>(i));
        }
        p.m = two_level_reflection(ja, jb, static_cast<int>(a.size()));
      } else {
        const auto num = integer();
        if (!eat("/")) fail("expected '/'");
        const auto den = integer();
        if (den == 0) fail("zero denominator");
        p.m = id == "PH" ? phase_gate(num, den) : binary_phase_gate(num, den);
      }
      if (!eat("]")) fail("expected ']'");
    } else if (id == "LSUM") {
      p.m = lambda_sum_matrix();
      p.p9 = 4;
      p.p9_depth = 2;
      p.tag = "LSUM";
    } else if (id == "BH") {
      p.m = binary_hadamard();
    } else {
      p.m = primitive_matrix(id);
      if (id == "P9") {
        p.p9 = 1;
        p.p9_depth = 1;
        p.inj = Injectable::p9;
      } else if (id == "R2") {
        p.r = 1;
        p.inj = Injectable::r2;
      } else if (id == "SUM") {
        p.is_sum = true;
      }
    }
    const bool was_sum = p.is_sum;
    suffixes(p);
    p.is_sum = was_sum;
    return p;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

GateRef build(std::string_view name) {
  Parsed p = NameParser(name).parse();
  auto def = std::make_shared<GateDef>(GateDef{std::string(name), p.m});
  def->clifford = p.p9 == 0 && p.r == 0 && is_clifford(p.m);
  def->p9 = p.p9;
  def->p9_depth = p.p9_depth;
  def->r = p.r;
  def->costed_tag = p.tag;
  def->injectable = p.inj;
  const int d = p.m.dim();
  def->columns.resize(d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) {
      const cplx v = p.m(r, c);
      if (std::abs(v) > 1e-15) def->columns[c].emplace_back(r, v);
    }
  return def;
}

}  // namespace

GateRef gate(std::string_view name) {
  static std::mutex mu;
  static std::unordered_map<std::string, GateRef> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(std::string(name)); it != cache.end()) return it->second;
  }
  GateRef g = build(name);
  std::lock_guard lock(mu);
  return cache.emplace(std::string(name), std::move(g)).first->second;
}

std::string adjoint_name(const GateDef& g) {
  const Matrix& m = g.matrix.matrix();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14) return g.name;
  if (g.name.size() > 2 && g.name.compare(g.name.size() - 2, 2, "dg") == 0)
    return g.name.substr(0, g.name.size() - 2);
  return g.name + "dg";
}

}  // namespace qtk
