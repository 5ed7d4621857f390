#include "conformetrics/selection.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "conformetrics/error.hpp"

namespace conformetrics {
namespace {

struct Token {
  enum class Kind { word, number, lparen, rparen, dash, end } kind;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view q) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < q.size()) {
    const char c = q[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Kind::lparen, "(", i++});
    } else if (c == ')') {
      out.push_back({Token::Kind::rparen, ")", i++});
    } else if (c == '-') {
      out.push_back({Token::Kind::dash, "-", i++});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < q.size() && std::isdigit(static_cast<unsigned char>(q[i]))) ++i;
      out.push_back({Token::Kind::number, std::string(q.substr(start, i - start)), start});
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '\'' || c == '*') {
      const std::size_t start = i;
      while (i < q.size() && (std::isalnum(static_cast<unsigned char>(q[i])) || q[i] == '\'' || q[i] == '*' || q[i] == '_'))
        ++i;
      out.push_back({Token::Kind::word, std::string(q.substr(start, i - start)), start});
    } else {
      throw SelectionSyntaxError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({Token::Kind::end, "", q.size()});
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

using Mask = std::vector<bool>;

bool is_amino_acid(const std::string& resname) {
  static const std::set<std::string> names{
      "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE", "LEU", "LYS", "MET", "PHE", "PRO",
      "SER", "THR", "TRP", "TYR", "VAL", "HID", "HIE", "HIP", "HSD", "HSE", "HSP", "CYX", "ASH", "GLH", "LYN", "ACE", "NME"};
  return names.count(resname) > 0;
}

class Parser {
public:
  Parser(const Topology& top, std::vector<Token> tokens) : top_(top), toks_(std::move(tokens)) {}

  Mask parse() {
    Mask m = parse_or();
    if (peek().kind != Token::Kind::end) throw SelectionSyntaxError("unexpected token '" + peek().text + "'", peek().pos);
    return m;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool peek_keyword(std::string_view kw) const {
    return peek().kind == Token::Kind::word && lower(peek().text) == kw;
  }

  Mask parse_or() {
    Mask m = parse_and();
    while (peek_keyword("or")) {
      next();
      const Mask r = parse_and();
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] || r[i];
    }
    return m;
  }

  Mask parse_and() {
    Mask m = parse_unary();
    while (peek_keyword("and")) {
      next();
      const Mask r = parse_unary();
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = m[i] && r[i];
    }
    return m;
  }

  Mask parse_unary() {
    if (peek_keyword("not")) {
      next();
      Mask m = parse_unary();
      m.flip();
      return m;
    }
    return parse_primary();
  }

  Mask parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::lparen) {
      next();
      Mask m = parse_or();
      if (peek().kind != Token::Kind::rparen) throw SelectionSyntaxError("expected ')'", peek().pos);
      next();
      return m;
    }
    if (t.kind != Token::Kind::word) throw SelectionSyntaxError("expected a selection keyword", t.pos);
    return parse_term();
  }

  int expect_int() {
    const Token& t = peek();
    if (t.kind != Token::Kind::number) throw SelectionSyntaxError("expected an integer", t.pos);
    next();
    int v = 0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc()) throw SelectionSyntaxError("integer out of range", t.pos);
    return v;
  }

  std::string expect_word() {
    const Token& t = peek();
    if (t.kind != Token::Kind::word && t.kind != Token::Kind::number) throw SelectionSyntaxError("expected a name", t.pos);
    next();
    return t.text;
  }

  template <class Pred>
  Mask mask_of(Pred pred) const {
    Mask m(top_.size(), false);
    for (std::size_t i = 0; i < top_.size(); ++i) m[i] = pred(top_[i]);
    return m;
  }

  Mask parse_term() {
    const Token& t = next();
    const std::string kw = lower(t.text);
    if (kw == "all") return Mask(top_.size(), true);
    if (kw == "backbone")
      return mask_of([](const Atom& a) { return a.name == "N" || a.name == "CA" || a.name == "C"; });
    if (kw == "calpha") return mask_of([](const Atom& a) { return a.name == "CA"; });
    if (kw == "chain") {
      const int k = expect_int();
      return mask_of([k](const Atom& a) { return a.chain_id == k; });
    }
    if (kw == "resid") {
      const int a = expect_int();
      int b = a;
      if (peek().kind == Token::Kind::dash) {
        next();
        b = expect_int();
      }
      if (b < a) throw SelectionSyntaxError("empty residue range", t.pos);
      return mask_of([a, b](const Atom& at) { return at.residue_seq >= a && at.residue_seq <= b; });
    }
    if (kw == "protein") return mask_of([](const Atom& a) { return is_amino_acid(a.residue_name); });
    if (kw == "resname") {
      const std::string n = expect_word();
      return mask_of([&n](const Atom& a) { return a.residue_name == n; });
    }
    if (kw == "name") {
      const std::string n = expect_word();
      return mask_of([&n](const Atom& a) { return a.name == n; });
    }
    if (kw == "element") {
      const std::string e = lower(expect_word());
      return mask_of([&e](const Atom& a) { return lower(a.element) == e; });
    }
    if (kw == "and" || kw == "or") throw SelectionSyntaxError("operator '" + t.text + "' without left operand", t.pos);
    throw SelectionSyntaxError("unknown keyword '" + t.text + "'", t.pos);
  }

  const Topology& top_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

Selection select(const Topology& topology, std::string_view query) {
  Parser p(topology, tokenize(query));
  const Mask m = p.parse();
  Selection sel;
  sel.label = std::string(query);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) sel.indices.push_back(i);
  if (sel.indices.empty()) throw UsageError("selection '" + sel.label + "' matches no atoms");
  return sel;
}

Selection select_all(const Topology& topology) { return select(topology, "all"); }

Vec3 center_of_mass(const Frame& frame, const Selection& sel, const Topology& topology) {
  if (sel.indices.empty()) throw UsageError("center_of_mass: empty selection");
  Vec3 acc = Vec3::Zero();
  double mtot = 0.0;
  for (std::size_t i : sel.indices) {
    const double m = topology[i].mass;
    acc += m * frame.positions[i];
    mtot += m;
  }
  return acc / mtot;
}

} // namespace conformetrics
