#include "qtk/circuit_text.hpp"

#include <algorithm>
#include <sstream>

#include "qtk/errors.hpp"

namespace qtk {

namespace {

void write_gate(std::ostream& os, const GateOp& g) {
  os << "gate " << g.gate->name;
  for (int w : g.wires) os << ' ' << w;
}

void write(std::ostream& os, const Instruction& ins, int indent) {
  const std::string pad(indent, ' ');
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, GateOp>) {
          os << pad;
          write_gate(os, op);
          os << '\n';
        } else if constexpr (std::is_same_v<T, MeasureOp>) {
          os << pad << "measure " << op.wire << " -> c" << op.slot << '\n';
        } else if constexpr (std::is_same_v<T, CondGateOp>) {
          os << pad << "cc c" << op.slot << "==" << op.value << ' ';
          write_gate(os, op.op);
          os << '\n';
        } else if constexpr (std::is_same_v<T, PrepOp>) {
          os << pad << "prep " << resource_state_name(op.state) << ' ' << op.wire << '\n';
        } else if constexpr (std::is_same_v<T, TableOp>) {
          os << pad << "ctab c" << op.dst << " <- c" << op.a << " c" << op.b << " :";
          for (int v : op.table) os << ' ' << v;
          os << '\n';
        } else {
          const RusData& d = *op.data;
          os << pad << "rus {\n";
          for (const auto& b : d.body) write(os, b, indent + 2);
          os << pad << "} until c" << d.slot << "==" << d.value << " corrections {\n";
          for (const auto& c : d.corrections) {
            std::ostringstream inner;
            write(inner, c.op, 0);
            os << pad << "  " << c.value << ": " << inner.str();
          }
          os << pad << "} max " << d.max_iterations << " expect " << d.expected_trials.num << '/'
             << d.expected_trials.den << '\n';
        }
      },
      ins.op);
}

struct Token {
  std::string text;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream is(text);
  std::string raw;
  int number = 0;
  while (std::getline(is, raw)) {
    ++number;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  Circuit parse() {
    int width = -1;
    std::vector<int> ancillas;
    if (pos_ < lines_.size() && lines_[pos_].tokens[0].text == "circuit") {
      const Line& l = lines_[pos_++];
      expect_count(l, 2);
      width = integer(l, l.tokens[1]);
      if (width < 1) fail(l, l.tokens[1], "width must be positive");
    }
    if (pos_ < lines_.size() && lines_[pos_].tokens[0].text == "ancilla") {
      const Line& l = lines_[pos_++];
      for (std::size_t i = 1; i < l.tokens.size(); ++i) ancillas.push_back(integer(l, l.tokens[i]));
      ancilla_line_ = &l;
    }
    width_ = width;
    std::vector<std::pair<Instruction, const Line*>> body = block(false);
    if (width < 0) width = std::max(1, inferred_ + 1);
    Circuit c(width);
    for (auto& [ins, line] : body) {
      try {
        c.add(std::move(ins));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line->number, line->tokens[0].column, e.what());
      }
    }
    for (int a : ancillas) {
      try {
        c.declare_ancilla(a);
      } catch (const std::invalid_argument& e) {
        throw ParseError(ancilla_line_->number, 1, e.what());
      }
    }
    return c;
  }

 private:
  [[noreturn]] static void fail(const Line& l, const Token& t, const std::string& why) {
    throw ParseError(l.number, t.column, why);
  }

  static void expect_count(const Line& l, std::size_t n) {
    if (l.tokens.size() != n) fail(l, l.tokens.back(), "expected " + std::to_string(n) + " tokens");
  }

  static int integer(const Line& l, const Token& t) {
    const std::string& s = t.text;
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail(l, t, "expected nonnegative integer, got '" + s + "'");
    return std::stoi(s);
  }

  int wire(const Line& l, const Token& t) {
    const int w = integer(l, t);
    if (width_ >= 0 && w >= width_) fail(l, t, "wire " + std::to_string(w) + " outside width " + std::to_string(width_));
    inferred_ = std::max(inferred_, w);
    return w;
  }

  static int slot(const Line& l, const Token& t, const std::string& s) {
    if (s.size() < 2 || s[0] != 'c') fail(l, t, "expected classical slot c<k>");
    return integer(l, {s.substr(1), t.column + 1});
  }

  // "c<k>==<v>"
  static std::pair<int, int> predicate(const Line& l, const Token& t) {
    const auto eq = t.text.find("==");
    if (eq == std::string::npos) fail(l, t, "expected c<k>==<v>");
    const int k = slot(l, t, t.text.substr(0, eq));
    const int v = integer(l, {t.text.substr(eq + 2), t.column + static_cast<int>(eq) + 2});
    if (v > 2) fail(l, t, "classical value outside 0..2");
    return {k, v};
  }

  GateOp gate_op(const Line& l, std::size_t at) {
    if (at + 1 >= l.tokens.size()) fail(l, l.tokens.back(), "gate needs a name and wires");
    GateRef g;
    try {
      g = qtk::gate(l.tokens[at + 1].text);
    } catch (const std::exception& e) {
      fail(l, l.tokens[at + 1], e.what());
    }
    std::vector<int> wires;
    for (std::size_t i = at + 2; i < l.tokens.size(); ++i) wires.push_back(wire(l, l.tokens[i]));
    if (static_cast<int>(wires.size()) != g->arity())
      fail(l, l.tokens[at + 1], "gate " + g->name + " takes " + std::to_string(g->arity()) + " wires");
    return {g, wires};
  }

  Instruction simple(const Line& l, std::size_t at) {
    const std::string& kw = l.tokens[at].text;
    const std::size_t n = l.tokens.size() - at;
    if (kw == "gate") return {gate_op(l, at)};
    if (kw == "measure") {
      if (n != 4 || l.tokens[at + 2].text != "->") fail(l, l.tokens[at], "expected 'measure <wire> -> c<k>'");
      return {MeasureOp{wire(l, l.tokens[at + 1]), slot(l, l.tokens[at + 3], l.tokens[at + 3].text)}};
    }
    if (kw == "cc") {
      if (n < 3 || l.tokens[at + 2].text != "gate") fail(l, l.tokens[at], "expected 'cc c<k>==<v> gate ...'");
      const auto [k, v] = predicate(l, l.tokens[at + 1]);
      return {CondGateOp{k, v, gate_op(l, at + 2)}};
    }
    if (kw == "prep") {
      if (n != 3) fail(l, l.tokens[at], "expected 'prep <state> <wire>'");
      try {
        return {PrepOp{resource_state_from_name(l.tokens[at + 1].text), wire(l, l.tokens[at + 2])}};
      } catch (const CatalogError& e) {
        fail(l, l.tokens[at + 1], e.what());
      }
    }
    if (kw == "ctab") {
      if (n != 15 || l.tokens[at + 2].text != "<-" || l.tokens[at + 5].text != ":")
        fail(l, l.tokens[at], "expected 'ctab c<d> <- c<a> c<b> : t0 .. t8'");
      TableOp t{slot(l, l.tokens[at + 1], l.tokens[at + 1].text), slot(l, l.tokens[at + 3], l.tokens[at + 3].text),
                slot(l, l.tokens[at + 4], l.tokens[at + 4].text), {}};
      for (int i = 0; i < 9; ++i) {
        t.table[i] = integer(l, l.tokens[at + 6 + i]);
        if (t.table[i] > 2) fail(l, l.tokens[at + 6 + i], "classical value outside 0..2");
      }
      return {t};
    }
    fail(l, l.tokens[at], "unknown instruction '" + kw + "'");
  }

  std::vector<std::pair<Instruction, const Line*>> block(bool nested) {
    std::vector<std::pair<Instruction, const Line*>> out;
    while (pos_ < lines_.size()) {
      const Line& l = lines_[pos_];
      if (l.tokens[0].text == "}") {
        if (!nested) fail(l, l.tokens[0], "unexpected '}'");
        return out;
      }
      ++pos_;
      if (l.tokens[0].text == "rus") {
        if (l.tokens.size() != 2 || l.tokens[1].text != "{") fail(l, l.tokens[0], "expected 'rus {'");
        out.emplace_back(rus(l), &l);
      } else {
        out.emplace_back(simple(l, 0), &l);
      }
    }
    if (nested) throw ParseError(lines_.empty() ? 1 : lines_.back().number, 1, "unterminated rus block");
    return out;
  }

  Instruction rus(const Line& open) {
    RusData d;
    for (auto& [ins, line] : block(true)) d.body.push_back(std::move(ins));
    if (pos_ >= lines_.size()) throw ParseError(open.number, 1, "unterminated rus block");
    const Line& mid = lines_[pos_++];
    if (mid.tokens.size() != 5 || mid.tokens[1].text != "until" || mid.tokens[3].text != "corrections" ||
        mid.tokens[4].text != "{")
      fail(mid, mid.tokens[0], "expected '} until c<k>==<v> corrections {'");
    std::tie(d.slot, d.value) = predicate(mid, mid.tokens[2]);
    while (true) {
      if (pos_ >= lines_.size()) throw ParseError(mid.number, 1, "unterminated corrections block");
      const Line& l = lines_[pos_++];
      if (l.tokens[0].text == "}") {
        const std::size_t n = l.tokens.size();
        if (n != 1 && n != 3 && n != 5) fail(l, l.tokens[0], "expected '} [max <n>] [expect <p>/<q>]'");
        std::size_t i = 1;
        if (i < n && l.tokens[i].text == "max") {
          d.max_iterations = integer(l, l.tokens[i + 1]);
          i += 2;
        }
        if (i < n && l.tokens[i].text == "expect") {
          const Token& t = l.tokens[i + 1];
          const auto slash = t.text.find('/');
          if (slash == std::string::npos) fail(l, t, "expected <p>/<q>");
          d.expected_trials = {integer(l, {t.text.substr(0, slash), t.column}),
                               integer(l, {t.text.substr(slash + 1), t.column + static_cast<int>(slash) + 1})};
          if (d.expected_trials.den == 0) fail(l, t, "zero denominator");
          i += 2;
        }
        if (i != n) fail(l, l.tokens[i], "unexpected token");
        break;
      }
      const std::string& head = l.tokens[0].text;
      if (head.size() < 2 || head.back() != ':') fail(l, l.tokens[0], "expected '<v>: <instruction>'");
      const int v = integer(l, {head.substr(0, head.size() - 1), l.tokens[0].column});
      if (v > 2) fail(l, l.tokens[0], "classical value outside 0..2");
      if (l.tokens.size() < 2) fail(l, l.tokens[0], "missing correction instruction");
      d.corrections.push_back({v, simple(l, 1)});
    }
    return {RusOp{std::make_shared<const RusData>(std::move(d))}};
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int width_ = -1;
  int inferred_ = 0;
  const Line* ancilla_line_ = nullptr;
};

}  // namespace

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.width() << '\n';
  if (!c.ancillas().empty()) {
    os << "ancilla";
    for (int a : c.ancillas()) os << ' ' << a;
    os << '\n';
  }
  for (const auto& ins : c.instructions()) write(os, ins, 0);
  return os.str();
}

Circuit deserialize(const std::string& text) { return Parser(tokenize(text)).parse(); }

}  // namespace qtk
