#include "supercalc/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace supercalc {

ParseError::ParseError(const std::string& what, std::size_t position, int line)
    : SupercalcError(line > 0 ? "line " + std::to_string(line) + ": " + what
                              : what + " at position " + std::to_string(position)),
      position_(position),
      line_(line) {}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const Chart& chart) : text_(text), chart_(chart) {}

  SuperFunction parse() {
    SuperFunction f = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  SuperFunction expr() {
    SuperFunction out = term();
    for (;;) {
      if (accept('+')) out += term();
      else if (accept('-')) out -= term();
      else return out;
    }
  }

  SuperFunction term() {
    SuperFunction out = unary();
    for (;;) {
      skip_space();
      if (accept('*')) {
        out = out * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        SuperFunction d = unary();
        if (d.body().is_zero()) throw ParseError("division by an expression with zero body", at);
        out = out * d.inverse();
      } else if (pos_ < text_.size() && (ident_start(text_[pos_]) || std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                         text_[pos_] == '(')) {
        fail("missing '*' between factors");
      } else {
        return out;
      }
    }
  }

  SuperFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  SuperFunction power() {
    SuperFunction base = atom();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    if (pos_ - start > 6) throw ParseError("exponent too large", start);
    return base.pow(static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start))));
  }

  SuperFunction atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SuperFunction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return SuperFunction(chart_, Rational(mpz_class(text_.substr(start, pos_ - start))));
    }
    if (ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (!chart_->contains(name)) throw ParseError("undeclared coordinate '" + name + "'", start);
      return SuperFunction::coordinate(chart_, chart_->index_of(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, sep)) {
    piece = trim(piece);
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

struct Section {
  std::string kind;
  std::string name;
  int line = 0;
  std::vector<std::pair<int, std::string>> lines;
};

/// Key and value of "key = value"; the key may contain brackets.
std::pair<std::string, std::string> key_value(const std::string& line, int lineno) {
  const std::size_t eq = line.find('=');
  if (eq == std::string::npos) throw ParseError("expected 'key = value'", 0, lineno);
  return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

SuperFunction parse_at(const std::string& text, const Chart& chart, int lineno) {
  try {
    return parse_expression(text, chart);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()), e.position(), lineno);
  }
}

Tensor2 parse_tensor(const Section& s, const Chart& chart) {
  Variance variance = Variance::Upper;
  Parity parity = Parity::Odd;
  std::string preset;
  std::vector<std::pair<int, std::string>> components;
  for (const auto& [lineno, line] : s.lines) {
    auto [key, value] = key_value(line, lineno);
    if (key == "variance") {
      if (value == "upper") variance = Variance::Upper;
      else if (value == "lower") variance = Variance::Lower;
      else throw ParseError("variance must be upper or lower", 0, lineno);
    } else if (key == "parity") {
      if (value == "even") parity = Parity::Even;
      else if (value == "odd") parity = Parity::Odd;
      else throw ParseError("parity must be even or odd", 0, lineno);
    } else if (key == "preset") {
      preset = value;
    } else {
      components.emplace_back(lineno, line);
    }
  }
  Tensor2 t(chart, variance, parity);
  if (!preset.empty()) {
    if (preset == "darboux") t = darboux_tensor(chart);
    else if (preset == "odd_riemannian") t = odd_riemannian_tensor(chart);
    else throw ParseError("unknown preset '" + preset + "'", 0, s.line);
    if (variance == Variance::Lower) t = invert(t);
  }
  for (const auto& [lineno, line] : components) {
    auto [key, value] = key_value(line, lineno);
    const std::size_t open = key.find('[');
    if (open == std::string::npos || key.back() != ']' || trim(key.substr(0, open)) != s.name)
      throw ParseError("expected " + s.name + "[a,b] = expression", 0, lineno);
    const std::vector<std::string> idx = split(key.substr(open + 1, key.size() - open - 2), ',');
    if (idx.size() != 2) throw ParseError("tensor components take two indices", 0, lineno);
    int a = 0, b = 0;
    try {
      a = chart->index_of(idx[0]);
      b = chart->index_of(idx[1]);
    } catch (const UnknownCoordinate& e) {
      throw ParseError(e.what(), 0, lineno);
    }
    try {
      t.set(a, b, parse_at(value, chart, lineno));
    } catch (const ParityViolation& e) {
      throw ParseError(e.what(), 0, lineno);
    }
  }
  return t;
}

RationalMatrix parse_matrix(const std::string& text, int lineno) {
  RationalMatrix m;
  for (const std::string& row : split(text, ';')) {
    std::vector<Rational> r;
    std::string cells = row;
    std::replace(cells.begin(), cells.end(), ',', ' ');
    std::istringstream in(cells);
    std::string entry;
    while (in >> entry) {
      try {
        Rational q(entry);
        q.canonicalize();
        r.push_back(q);
      } catch (const std::invalid_argument&) {
        throw ParseError("bad matrix entry '" + entry + "'", 0, lineno);
      }
    }
    m.push_back(std::move(r));
  }
  return m;
}

template <class T>
const T& lookup(const std::vector<std::pair<std::string, T>>& items, const std::string& name, const char* what) {
  if (items.empty()) throw SupercalcError(std::string("problem file declares no ") + what);
  if (name.empty()) return items.front().second;
  for (const auto& [n, v] : items)
    if (n == name) return v;
  throw SupercalcError(std::string("no ") + what + " named '" + name + "'");
}

}  // namespace

SuperFunction parse_expression(const std::string& text, const Chart& chart) {
  return ExpressionParser(text, chart).parse();
}

const Tensor2& ProblemFile::tensor(const std::string& name) const { return lookup(tensors, name, "tensor"); }
const SuperDiffeo& ProblemFile::diffeo(const std::string& name) const { return lookup(diffeos, name, "diffeo"); }

LinearLieAlgebra ProblemFile::algebra(const std::string& name) const {
  const AlgebraSpec& spec = lookup(algebras, name, "algebra");
  if (!spec.stabilizer_of.empty()) return LinearLieAlgebra::stabilizer(tensor(spec.stabilizer_of));
  return LinearLieAlgebra(spec.parities, spec.generators);
}

ProblemFile parse_problem(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", 0, lineno);
      const std::vector<std::string> words = split(line.substr(1, line.size() - 2), ' ');
      if (words.empty() || words.size() > 2) throw ParseError("bad section header", 0, lineno);
      sections.push_back({words[0], words.size() == 2 ? words[1] : "", lineno, {}});
      continue;
    }
    if (sections.empty()) throw ParseError("content before the first section", 0, lineno);
    sections.back().lines.emplace_back(lineno, line);
  }
  if (sections.empty() || sections.front().kind != "chart") throw ParseError("the first section must be [chart]", 0, 1);

  ProblemFile p;
  std::vector<std::string> even, odd;
  for (const auto& [ln, line] : sections.front().lines) {
    auto [key, value] = key_value(line, ln);
    if (key == "even") even = split(value, ',');
    else if (key == "odd") odd = split(value, ',');
    else throw ParseError("unknown chart key '" + key + "'", 0, ln);
  }
  try {
    p.chart = make_chart(even, odd);
  } catch (const SupercalcError& e) {
    throw ParseError(e.what(), 0, sections.front().line);
  }

  auto duplicate = [](const auto& items, const std::string& name) {
    for (const auto& [n, v] : items)
      if (n == name) return true;
    return false;
  };
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& s = sections[i];
    if (s.kind == "tensor") {
      Section named = s;
      if (named.name.empty()) named.name = "E";
      if (duplicate(p.tensors, named.name)) throw ParseError("duplicate tensor '" + named.name + "'", 0, s.line);
      p.tensors.emplace_back(named.name, parse_tensor(named, p.chart));
    } else if (s.kind == "potential") {
      if (p.potential) throw ParseError("duplicate [potential]", 0, s.line);
      std::string body;
      int at = s.line;
      for (const auto& [ln, line] : s.lines) {
        body += (body.empty() ? "" : " ") + line;
        at = ln;
      }
      if (const std::size_t eq = body.find('='); eq != std::string::npos) body = body.substr(eq + 1);
      p.potential = parse_at(trim(body), p.chart, at);
    } else if (s.kind == "diffeo") {
      std::vector<SuperFunction> images;
      for (int a = 0; a < p.chart->size(); ++a) images.push_back(SuperFunction::coordinate(p.chart, a));
      for (const auto& [ln, line] : s.lines) {
        auto [key, value] = key_value(line, ln);
        if (!p.chart->contains(key)) throw ParseError("undeclared coordinate '" + key + "'", 0, ln);
        images[static_cast<std::size_t>(p.chart->index_of(key))] = parse_at(value, p.chart, ln);
      }
      const std::string name = s.name.empty() ? "phi" : s.name;
      if (duplicate(p.diffeos, name)) throw ParseError("duplicate diffeo '" + name + "'", 0, s.line);
      try {
        p.diffeos.emplace_back(name, SuperDiffeo(p.chart, p.chart, std::move(images)));
      } catch (const SupercalcError& e) {
        throw ParseError(e.what(), 0, s.line);
      }
    } else if (s.kind == "algebra") {
      AlgebraSpec spec;
      for (const auto& [ln, line] : s.lines) {
        auto [key, value] = key_value(line, ln);
        if (key == "stabilizer") {
          spec.stabilizer_of = value;
        } else if (key == "parities") {
          for (const std::string& v : split(value, ',')) {
            if (v != "0" && v != "1") throw ParseError("parities are 0 or 1", 0, ln);
            spec.parities.push_back(v == "1");
          }
        } else if (key == "generator") {
          spec.generators.push_back(parse_matrix(value, ln));
        } else {
          throw ParseError("unknown algebra key '" + key + "'", 0, ln);
        }
      }
      if (spec.stabilizer_of.empty() && spec.parities.empty())
        throw ParseError("algebra needs 'stabilizer' or 'parities'", 0, s.line);
      const std::string name = s.name.empty() ? "g" : s.name;
      if (duplicate(p.algebras, name)) throw ParseError("duplicate algebra '" + name + "'", 0, s.line);
      p.algebras.emplace_back(name, std::move(spec));
    } else {
      throw ParseError("unknown section [" + s.kind + "]", 0, s.line);
    }
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SupercalcError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace supercalc
