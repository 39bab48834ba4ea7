#include "twocat/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "twocat/errors.hpp"

namespace twocat::sym {

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Factor f = *it;
    f.exp = -f.exp;
    out.push_back(std::move(f));
  }
  return out;
}

Word word_concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word free_reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Factor& f : w) {
    if (!out.empty() && out.back().homs == f.homs && out.back().base == f.base &&
        out.back().exp == -f.exp) {
      out.pop_back();
    } else {
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::string factor_str(const Factor& f) {
  std::string s = f.base;
  for (auto it = f.homs.rbegin(); it != f.homs.rend(); ++it) s = *it + "(" + s + ")";
  if (f.exp < 0) s += "^-1";
  return s;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " * ";
    s += factor_str(w[i]);
  }
  return s;
}

namespace {

struct Token {
  enum Kind { Ident, Number, LParen, RParen, Comma, Star, Caret, Minus, End } kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_;

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", at};
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      tok_ = {Token::Ident, text_.substr(pos_, end - pos_), at};
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      tok_ = {Token::Number, text_.substr(pos_, end - pos_), at};
      pos_ = end;
      return;
    }
    ++pos_;
    switch (c) {
      case '(': tok_ = {Token::LParen, "(", at}; return;
      case ')': tok_ = {Token::RParen, ")", at}; return;
      case ',': tok_ = {Token::Comma, ",", at}; return;
      case '*': tok_ = {Token::Star, "*", at}; return;
      case '^': tok_ = {Token::Caret, "^", at}; return;
      case '-': tok_ = {Token::Minus, "-", at}; return;
      default: throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
  }
};

class WordParser {
 public:
  WordParser(const std::string& text, const SymbolTable& table) : lex_(text), table_(table) {}

  Word parse_full() {
    Word w = parse_word_seq();
    if (lex_.peek().kind != Token::End) {
      throw ParseError("trailing input after word", lex_.peek().offset);
    }
    return w;
  }

 private:
  Lexer lex_;
  const SymbolTable& table_;

  bool starts_primary() const {
    const auto k = lex_.peek().kind;
    return k == Token::Ident || k == Token::LParen ||
           (k == Token::Number && lex_.peek().text == "1");
  }

  Word parse_word_seq() {
    Word w = parse_term();
    while (true) {
      if (lex_.peek().kind == Token::Star) {
        lex_.take();
        w = word_concat(w, parse_term());
      } else if (starts_primary()) {
        w = word_concat(w, parse_term());
      } else {
        break;
      }
    }
    return w;
  }

  Word parse_term() {
    Word w = parse_primary();
    if (lex_.peek().kind == Token::Caret) {
      const std::size_t at = lex_.take().offset;
      long sign = 1;
      if (lex_.peek().kind == Token::Minus) {
        lex_.take();
        sign = -1;
      }
      if (lex_.peek().kind != Token::Number) {
        throw ParseError("expected an integer exponent", lex_.peek().offset);
      }
      const long mag = std::strtol(lex_.take().text.c_str(), nullptr, 10);
      if (mag > 8) throw ParseError("exponent magnitude exceeds 8", at);
      Word out;
      const Word base = sign < 0 ? word_inverse(w) : w;
      for (long i = 0; i < mag; ++i) out = word_concat(out, base);
      return out;
    }
    return w;
  }

  Word parse_primary() {
    const Token t = lex_.take();
    if (t.kind == Token::Number && t.text == "1") return {};
    if (t.kind == Token::LParen) {
      Word w = parse_word_seq();
      expect_rparen();
      return w;
    }
    if (t.kind != Token::Ident) throw ParseError("expected a name, '(' or '1'", t.offset);

    if (lex_.peek().kind != Token::LParen) {
      if (!table_.known_base(t.text)) {
        throw ParseError("undeclared symbol '" + t.text + "'", t.offset);
      }
      return {Factor{{}, t.text, 1}};
    }

    lex_.take();  // '('
    if (t.text == "conj" || t.text == "sigma" || t.text == "tp") {
      Word first = parse_word_seq();
      expect(Token::Comma, "expected ',' between arguments");
      Word second = parse_word_seq();
      expect_rparen();
      if (t.text == "tp") {
        // tp(d, x) = d x d^-1
        return word_concat(word_concat(first, second), word_inverse(first));
      }
      // conj(u, x) = sigma(u, x) = u^-1 x u
      return word_concat(word_concat(word_inverse(first), second), first);
    }
    if (t.text.rfind("sigma_", 0) == 0 && t.text.size() > 6) {
      const std::string u = t.text.substr(6);
      if (!table_.known_base(u)) {
        throw ParseError("undeclared symbol '" + u + "' in conjugation shorthand", t.offset);
      }
      Word arg = parse_word_seq();
      expect_rparen();
      const Word uw{Factor{{}, u, 1}};
      return word_concat(word_concat(word_inverse(uw), arg), uw);
    }
    if (table_.homs.count(t.text) == 0) {
      throw ParseError("'" + t.text + "' is not a declared map", t.offset);
    }
    Word arg = parse_word_seq();
    expect_rparen();
    for (Factor& f : arg) f.homs.insert(f.homs.begin(), t.text);
    return arg;
  }

  void expect(Token::Kind k, const std::string& msg) {
    if (lex_.peek().kind != k) throw ParseError(msg, lex_.peek().offset);
    lex_.take();
  }

  void expect_rparen() { expect(Token::RParen, "expected ')'"); }
};

}  // namespace

Word parse_word(const std::string& text, const SymbolTable& table) {
  return WordParser(text, table).parse_full();
}

alg::AlgebraElement eval_word(const Word& w, const Interpretation& in,
                              const alg::AlgebraRef& ambient) {
  alg::AlgebraElement acc = ambient->one();
  for (const Factor& f : w) {
    const auto at = in.atoms.find(f.base);
    if (at == in.atoms.end()) {
      throw CertificationError("no interpretation for symbol '" + f.base + "'");
    }
    alg::Unit val = at->second;
    for (auto it = f.homs.rbegin(); it != f.homs.rend(); ++it) {
      const auto hm = in.homs.find(*it);
      if (hm == in.homs.end()) {
        throw CertificationError("no interpretation for map '" + *it + "'");
      }
      val = hm->second->apply(val);
    }
    acc = acc * (f.exp > 0 ? val.elem() : val.inv());
  }
  return acc;
}

}  // namespace twocat::sym
