#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scl/linalg.hpp"
#include "scl/rational.hpp"

namespace scl {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(size_t p, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(p) + ": " + msg), pos(p) {}
};

struct Factor {
  std::string name;
  std::vector<char> gens;  // single lowercase letters, globally unique
};

// One coordinate of the amalgamated subgroup: generator g[i] of factor i with
// exponent exp[i], so g[0]^exp[0] = g[1]^exp[1] = ... in the product. A
// coordinate written with the inf sentinel carries no relation (finite =
// false) and turns that direction into a free product.
struct AmalgCoord {
  bool finite = true;
  std::vector<int> gen;  // local generator index per factor
  std::vector<Int> exp;  // nonzero, meaningful only when finite
};

struct GroupSpec {
  std::vector<Factor> factors;
  std::vector<AmalgCoord> coords;

  int num_factors() const { return static_cast<int>(factors.size()); }
  int total_gens() const;
  int gen_offset(int factor) const;
  int global_gen(int factor, int local) const { return gen_offset(factor) + local; }
  char gen_letter(int factor, int local) const { return factors[factor].gens[local]; }
  std::optional<std::pair<int, int>> find_gen(char c) const;  // (factor, local)
  // Which amalgamation coordinate a generator belongs to, if any.
  std::optional<int> coord_of(int factor, int local) const;
};

// A cyclic word: blocks of consecutive letters from one factor, with the
// block's exponent vector indexed by that factor's local generators. Kept in
// canonical form (merged, cyclically reduced, lexicographically least
// rotation) by canonical_word.
struct Word {
  struct Block {
    int factor = 0;
    VecZ exps;
    bool operator==(const Block&) const = default;
  };
  std::vector<Block> blocks;

  bool empty() const { return blocks.empty(); }
  bool operator==(const Word&) const = default;
};

int compare(const Word::Block& a, const Word::Block& b);
int compare(const Word& a, const Word& b);

Word canonical_word(Word w);
Word word_inverse(const Word& w);

// Flattens a word to (global generator id, nonzero exponent) letters, each
// block expanded in increasing generator order.
std::vector<std::pair<int, Int>> word_letters(const Word& w, const GroupSpec& g);

struct ChainTerm {
  Rat coeff;
  Word word;
};

// Stored terms represent scale times the chain the caller named, so exact
// values survive the integer-coefficient rewrites in normalize.
struct Chain {
  std::vector<ChainTerm> terms;
  Int scale = 1;
};

// Sorts terms, combines equal words, drops empty words and zero coefficients.
Chain canonical_chain(Chain c);

GroupSpec parse_group(const std::string& text);
Chain parse_chain(const std::string& text, const GroupSpec& g);

// Image in H_1(G; Q): the raw generator-exponent vector of the chain reduced
// to a fixed coset representative modulo the amalgamation relations. Zero iff
// the chain is null-homologous.
VecQ homology_class(const Chain& c, const GroupSpec& g);

// Rewrites a null-homologous chain so that every amalgamation generator has
// zero total exponent across the chain: coefficients are cleared to positive
// integers (inverting words as needed, scaling recorded in Chain::scale) and
// subgroup units g_i^{r_i} are pushed to the next factor until every factor's
// totals vanish. Throws std::invalid_argument when the class is nonzero.
Chain normalize(const Chain& c, const GroupSpec& g);

std::string word_str(const Word& w, const GroupSpec& g);
std::string chain_str(const Chain& c, const GroupSpec& g);
std::string group_str(const GroupSpec& g);

}  // namespace scl
