#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "twocat/algebra.hpp"

namespace twocat::sym {

// One factor of a unit word: an atom or variable, wrapped in zero or more
// named maps (outermost first), raised to +1 or -1.  Maps distribute over
// products and inverses at parse time, so a word is always a flat product.
struct Factor {
  std::vector<std::string> homs;
  std::string base;
  int exp = 1;

  bool operator==(const Factor&) const = default;
  auto operator<=>(const Factor&) const = default;
};

using Word = std::vector<Factor>;

Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
// Deletes adjacent inverse pairs until none remain.
Word free_reduce(Word w);
// Canonical printer; the empty word prints as "1".
std::string word_str(const Word& w);
std::string factor_str(const Factor& f);

// Names the parser knows about.  Bare identifiers must be declared as
// symbols or variables; identifiers applied to arguments must be declared
// maps (or be the built-in sugar conj/tp/sigma_*).
struct SymbolTable {
  std::set<std::string> atoms;
  std::set<std::string> vars;
  std::set<std::string> homs;

  bool known_base(const std::string& name) const {
    return atoms.count(name) != 0 || vars.count(name) != 0;
  }
};

// Grammar, with offsets into `text` reported on error:
//   word   := '1' | factor (('*')? factor)*
//   factor := primary ('^' ('-')? digits)?
//   primary:= ident | ident '(' word (',' word)? ')' | '(' word ')'
// Sugar: conj(u, x) and sigma_u(x) expand to u^-1 x u; tp(d, x) expands to
// d x d^-1.  A declared map name f applied to a word distributes over its
// factors.  Exponents other than +-1 are expanded by repetition (|e| <= 8).
Word parse_word(const std::string& text, const SymbolTable& table);

// Concrete values for atoms and maps; words evaluate to algebra elements.
// `ambient` names the algebra the result must land in (and supplies the
// identity for the empty word).
struct Interpretation {
  std::map<std::string, alg::Unit> atoms;
  std::map<std::string, alg::AlgHomRef> homs;
};

alg::AlgebraElement eval_word(const Word& w, const Interpretation& in,
                              const alg::AlgebraRef& ambient);

}  // namespace twocat::sym
