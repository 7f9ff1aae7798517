#include "scl/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace scl {

int GroupSpec::total_gens() const {
  int n = 0;
  for (const Factor& f : factors) n += static_cast<int>(f.gens.size());
  return n;
}

int GroupSpec::gen_offset(int factor) const {
  int n = 0;
  for (int i = 0; i < factor; ++i) n += static_cast<int>(factors[i].gens.size());
  return n;
}

std::optional<std::pair<int, int>> GroupSpec::find_gen(char c) const {
  for (int i = 0; i < num_factors(); ++i)
    for (size_t j = 0; j < factors[i].gens.size(); ++j)
      if (factors[i].gens[j] == c) return std::make_pair(i, static_cast<int>(j));
  return std::nullopt;
}

std::optional<int> GroupSpec::coord_of(int factor, int local) const {
  for (size_t j = 0; j < coords.size(); ++j)
    if (coords[j].gen[factor] == local) return static_cast<int>(j);
  return std::nullopt;
}

int compare(const Word::Block& a, const Word::Block& b) {
  if (a.factor != b.factor) return a.factor < b.factor ? -1 : 1;
  if (a.exps.size() != b.exps.size()) return a.exps.size() < b.exps.size() ? -1 : 1;
  for (size_t i = 0; i < a.exps.size(); ++i) {
    int c = cmp(a.exps[i], b.exps[i]);
    if (c != 0) return c;
  }
  return 0;
}

int compare(const Word& a, const Word& b) {
  size_t n = std::min(a.blocks.size(), b.blocks.size());
  for (size_t i = 0; i < n; ++i) {
    int c = compare(a.blocks[i], b.blocks[i]);
    if (c != 0) return c;
  }
  if (a.blocks.size() != b.blocks.size()) return a.blocks.size() < b.blocks.size() ? -1 : 1;
  return 0;
}

namespace {

bool block_zero(const Word::Block& b) {
  return std::all_of(b.exps.begin(), b.exps.end(), [](const Int& e) { return e == 0; });
}

// One merging sweep: adjacent blocks of the same factor are added, zero
// blocks dropped, with the stack catching cascades.
std::vector<Word::Block> merge_linear(const std::vector<Word::Block>& in) {
  std::vector<Word::Block> out;
  for (const Word::Block& b : in) {
    if (block_zero(b)) continue;
    if (!out.empty() && out.back().factor == b.factor) {
      for (size_t i = 0; i < b.exps.size(); ++i) out.back().exps[i] += b.exps[i];
      if (block_zero(out.back())) out.pop_back();
    } else {
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace

Word canonical_word(Word w) {
  auto blocks = merge_linear(w.blocks);
  while (blocks.size() >= 2 && blocks.front().factor == blocks.back().factor) {
    for (size_t i = 0; i < blocks.back().exps.size(); ++i)
      blocks.front().exps[i] += blocks.back().exps[i];
    blocks.pop_back();
    if (block_zero(blocks.front())) blocks.erase(blocks.begin());
    blocks = merge_linear(blocks);
  }
  if (blocks.size() == 1 && block_zero(blocks.front())) blocks.clear();

  // Lexicographically least rotation.
  if (blocks.size() > 1) {
    Word best{blocks};
    for (size_t s = 1; s < blocks.size(); ++s) {
      Word rot;
      rot.blocks.insert(rot.blocks.end(), blocks.begin() + s, blocks.end());
      rot.blocks.insert(rot.blocks.end(), blocks.begin(), blocks.begin() + s);
      if (compare(rot, best) < 0) best = rot;
    }
    return best;
  }
  return Word{blocks};
}

Word word_inverse(const Word& w) {
  Word out;
  for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it) {
    Word::Block b = *it;
    for (Int& e : b.exps) e = -e;
    out.blocks.push_back(std::move(b));
  }
  return canonical_word(std::move(out));
}

std::vector<std::pair<int, Int>> word_letters(const Word& w, const GroupSpec& g) {
  std::vector<std::pair<int, Int>> out;
  for (const Word::Block& b : w.blocks)
    for (size_t j = 0; j < b.exps.size(); ++j)
      if (b.exps[j] != 0) out.emplace_back(g.global_gen(b.factor, static_cast<int>(j)), b.exps[j]);
  return out;
}

Chain canonical_chain(Chain c) {
  for (ChainTerm& t : c.terms) t.word = canonical_word(std::move(t.word));
  std::sort(c.terms.begin(), c.terms.end(),
            [](const ChainTerm& a, const ChainTerm& b) { return compare(a.word, b.word) < 0; });
  std::vector<ChainTerm> out;
  for (ChainTerm& t : c.terms) {
    if (t.word.empty() || t.coeff == 0) continue;
    if (!out.empty() && out.back().word == t.word)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const ChainTerm& t) { return t.coeff == 0; }),
            out.end());
  c.terms = std::move(out);
  return c;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c)) throw ParseError(pos, std::string("expected '") + c + "' " + what);
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (pos == start) throw ParseError(pos, "expected a name");
    return s.substr(start, pos - start);
  }
  Int integer() {
    skip_ws();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError(start, "expected an integer");
    return Int(s.substr(start, pos - start));
  }
};

}  // namespace

GroupSpec parse_group(const std::string& text) {
  Cursor cur{text};
  GroupSpec g;
  bool amalg_seen = false;
  std::map<char, int> letter_owner;

  while (!cur.eof()) {
    size_t clause_pos = cur.pos;
    std::string kw = cur.ident();
    if (kw == "abelian") {
      if (amalg_seen) throw ParseError(clause_pos, "factor declared after an amalg clause");
      Factor f;
      f.name = cur.ident();
      for (const Factor& other : g.factors)
        if (other.name == f.name) throw ParseError(clause_pos, "duplicate factor name " + f.name);
      cur.expect('=', "after factor name");
      while (true) {
        cur.skip_ws();
        size_t gp = cur.pos;
        if (cur.pos >= text.size() || !std::islower(static_cast<unsigned char>(text[cur.pos])))
          throw ParseError(gp, "expected a generator (single lowercase letter)");
        char c = text[cur.pos++];
        if (cur.pos < text.size() && std::isalnum(static_cast<unsigned char>(text[cur.pos])))
          throw ParseError(gp, "generator names are single letters");
        if (letter_owner.count(c))
          throw ParseError(gp, std::string("generator '") + c + "' already declared");
        letter_owner[c] = g.num_factors();
        f.gens.push_back(c);
        if (!cur.eat(',')) break;
      }
      g.factors.push_back(std::move(f));
    } else if (kw == "amalg") {
      if (g.factors.empty()) throw ParseError(clause_pos, "amalg clause before any factor");
      amalg_seen = true;
      AmalgCoord coord;
      int part = 0;
      while (true) {
        cur.skip_ws();
        size_t gp = cur.pos;
        if (part >= g.num_factors())
          throw ParseError(gp, "amalg clause names more parts than factors");
        if (cur.pos >= text.size() || !std::islower(static_cast<unsigned char>(text[cur.pos])))
          throw ParseError(gp, "expected a generator in amalg clause");
        char c = text[cur.pos++];
        auto loc = g.find_gen(c);
        if (!loc) throw ParseError(gp, std::string("unknown generator '") + c + "'");
        if (loc->first != part)
          throw ParseError(gp, std::string("generator '") + c + "' does not belong to factor " +
                                   g.factors[part].name);
        for (const AmalgCoord& prev : g.coords)
          if (prev.gen[part] == loc->second)
            throw ParseError(gp, std::string("generator '") + c +
                                     "' used in two amalg coordinates");
        cur.expect('^', "after amalg generator");
        cur.skip_ws();
        size_t ep = cur.pos;
        bool is_inf = false;
        if (text.compare(cur.pos, 3, "inf") == 0) {
          is_inf = true;
          cur.pos += 3;
        }
        Int e = 0;
        if (!is_inf) {
          e = cur.integer();
          if (e == 0) throw ParseError(ep, "amalg exponent must be nonzero");
        }
        if (part == 0) {
          coord.finite = !is_inf;
        } else if (coord.finite == is_inf) {
          throw ParseError(ep, "inf must be used on every part of a coordinate or none");
        }
        coord.gen.push_back(loc->second);
        coord.exp.push_back(e);
        ++part;
        if (!cur.eat('=')) break;
      }
      if (part != g.num_factors())
        throw ParseError(cur.pos, "amalg clause must name one generator per factor");
      g.coords.push_back(std::move(coord));
    } else {
      throw ParseError(clause_pos, "expected 'abelian' or 'amalg', got '" + kw + "'");
    }
    if (!cur.eat(';') && !cur.eof())
      throw ParseError(cur.pos, "expected ';' between clauses");
  }
  if (g.factors.empty()) throw ParseError(0, "no factors declared");
  return g;
}

namespace {

struct WordParser {
  Cursor& cur;
  const GroupSpec& g;

  // word := item+ ; item := atom ('^' int)? ; atom := letter | '[' word ',' word ']'
  Word parse_word(bool inside_brackets) {
    Word w;
    bool any = false;
    while (true) {
      char c = cur.peek();
      if (c == '[') {
        ++cur.pos;
        Word x = parse_word(true);
        cur.expect(',', "between commutator entries");
        Word y = parse_word(true);
        cur.expect(']', "closing the commutator");
        Word atom;
        auto app = [&atom](const Word& part) {
          atom.blocks.insert(atom.blocks.end(), part.blocks.begin(), part.blocks.end());
        };
        Word xi = raw_inverse(x), yi = raw_inverse(y);
        app(x);
        app(y);
        app(xi);
        app(yi);
        append_power(w, atom);
        any = true;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        ++cur.pos;
        bool inverse = std::isupper(static_cast<unsigned char>(c));
        char letter = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        auto loc = g.find_gen(letter);
        if (!loc) throw ParseError(cur.pos - 1, std::string("unknown generator '") + c + "'");
        Word atom;
        Word::Block b;
        b.factor = loc->first;
        b.exps.assign(g.factors[loc->first].gens.size(), Int(0));
        b.exps[loc->second] = inverse ? -1 : 1;
        atom.blocks.push_back(std::move(b));
        append_power(w, atom);
        any = true;
      } else {
        break;
      }
    }
    if (!any)
      throw ParseError(cur.pos, inside_brackets ? "empty commutator entry" : "expected a word");
    return w;
  }

  static Word raw_inverse(const Word& w) {
    Word out;
    for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it) {
      Word::Block b = *it;
      for (Int& e : b.exps) e = -e;
      out.blocks.push_back(std::move(b));
    }
    return out;
  }

  void append_power(Word& w, const Word& atom) {
    Int e = 1;
    if (cur.eat('^')) e = cur.integer();
    const Word base = e < 0 ? raw_inverse(atom) : atom;
    Int reps = e < 0 ? -e : e;
    for (Int i = 0; i < reps; ++i)
      w.blocks.insert(w.blocks.end(), base.blocks.begin(), base.blocks.end());
  }
};

}  // namespace

Chain parse_chain(const std::string& text, const GroupSpec& g) {
  Cursor cur{text};
  Chain chain;
  bool negative = cur.eat('-');
  while (true) {
    if (cur.eof()) throw ParseError(cur.pos, "expected a chain term");
    // Optional rational coefficient followed by '*'.
    Rat coeff = 1;
    cur.skip_ws();
    size_t mark = cur.pos;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      Int num = cur.integer();
      Int den = 1;
      if (cur.eat('/')) {
        den = cur.integer();
        if (den == 0) throw ParseError(mark, "zero denominator");
      }
      if (cur.eat('*')) {
        coeff = make_rat(num, den);
      } else {
        cur.pos = mark;  // a bare number is not a term
        throw ParseError(mark, "coefficient must be followed by '*'");
      }
    }
    if (negative) coeff = -coeff;
    WordParser wp{cur, g};
    ChainTerm term{coeff, wp.parse_word(false)};
    chain.terms.push_back(std::move(term));
    if (cur.eof()) break;
    if (cur.eat('+'))
      negative = false;
    else if (cur.eat('-'))
      negative = true;
    else
      throw ParseError(cur.pos, "expected '+', '-', or end of chain");
  }
  chain = canonical_chain(std::move(chain));
  if (chain.terms.empty()) throw ParseError(0, "chain is empty after reduction");
  return chain;
}

namespace {

// Relation rows spanning the subgroup identifications in H_1(G; Q).
MatQ relation_matrix(const GroupSpec& g) {
  std::vector<VecQ> rows;
  for (const AmalgCoord& coord : g.coords) {
    if (!coord.finite) continue;
    for (int i = 0; i + 1 < g.num_factors(); ++i) {
      VecQ row(g.total_gens(), Rat(0));
      row[g.global_gen(i, coord.gen[i])] = Rat(coord.exp[i]);
      row[g.global_gen(i + 1, coord.gen[i + 1])] = -Rat(coord.exp[i + 1]);
      rows.push_back(std::move(row));
    }
  }
  MatQ m(static_cast<int>(rows.size()), g.total_gens());
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < g.total_gens(); ++j) m.at(static_cast<int>(i), j) = rows[i][j];
  return m;
}

}  // namespace

VecQ homology_class(const Chain& c, const GroupSpec& g) {
  VecQ raw(g.total_gens(), Rat(0));
  for (const ChainTerm& t : c.terms)
    for (const Word::Block& b : t.word.blocks)
      for (size_t j = 0; j < b.exps.size(); ++j)
        raw[g.global_gen(b.factor, static_cast<int>(j))] += t.coeff * Rat(b.exps[j]);
  for (Rat& x : raw) {
    x /= Rat(c.scale);
    x.canonicalize();
  }
  MatQ rel = relation_matrix(g);
  std::vector<int> pivots;
  int r = rref(rel, &pivots);
  for (int k = 0; k < r; ++k) {
    Rat factor = raw[pivots[k]];
    if (factor == 0) continue;
    for (int j = 0; j < g.total_gens(); ++j) raw[j] -= factor * rel.at(k, j);
  }
  return raw;
}

namespace {

Int gen_total(const Chain& c, int factor, int local) {
  Int s = 0;
  for (const ChainTerm& t : c.terms) {
    for (const Word::Block& b : t.word.blocks)
      if (b.factor == factor) s += t.coeff.get_num() * b.exps[local];
  }
  return s;
}

}  // namespace

Chain normalize(const Chain& input, const GroupSpec& g) {
  Chain c = canonical_chain(input);
  VecQ cls = homology_class(c, g);
  if (!is_zero(cls)) throw std::invalid_argument("chain is not null-homologous");

  // Integer coefficients, then positive ones by inverting words.
  Int den = 1;
  for (const ChainTerm& t : c.terms) den = int_lcm(den, t.coeff.get_den());
  if (den != 1) {
    for (ChainTerm& t : c.terms) {
      t.coeff *= Rat(den);
      t.coeff.canonicalize();
    }
    c.scale *= den;
  }
  for (ChainTerm& t : c.terms) {
    if (t.coeff < 0) {
      t.coeff = -t.coeff;
      t.word = word_inverse(t.word);
    }
  }
  c = canonical_chain(std::move(c));

  for (size_t j = 0; j < g.coords.size(); ++j) {
    const AmalgCoord& coord = g.coords[j];
    if (!coord.finite) continue;
    for (int i = 0; i + 1 < g.num_factors(); ++i) {
      const Int& r = coord.exp[i];
      const Int r_next = coord.exp[i + 1];
      while (true) {
        Int s = gen_total(c, i, coord.gen[i]);
        if (s == 0) break;
        Int rem = s % r;
        if (rem != 0) {
          // Scale multiplicities so whole units can move.
          Int d = abs(r) / int_gcd(abs(r), abs(s));
          for (ChainTerm& t : c.terms) t.coeff *= Rat(d);
          c.scale *= d;
          s *= d;
        }
        int sigma = (sgn(s) == sgn(r)) ? 1 : -1;
        int want = sgn(s);
        bool applied = false;
        for (size_t ti = 0; ti < c.terms.size() && !applied; ++ti) {
          for (size_t bi = 0; bi < c.terms[ti].word.blocks.size() && !applied; ++bi) {
            Word::Block& b = c.terms[ti].word.blocks[bi];
            if (b.factor != i || sgn(b.exps[coord.gen[i]]) != want) continue;
            // Split one copy off a repeated term before rewriting it.
            size_t target = ti;
            if (c.terms[ti].coeff > 1) {
              c.terms[ti].coeff -= 1;
              c.terms.push_back(ChainTerm{Rat(1), c.terms[ti].word});
              target = c.terms.size() - 1;
            }
            Word& w = c.terms[target].word;
            w.blocks[bi].exps[coord.gen[i]] -= sigma * r;
            Word::Block moved;
            moved.factor = i + 1;
            moved.exps.assign(g.factors[i + 1].gens.size(), Int(0));
            moved.exps[coord.gen[i + 1]] = sigma * r_next;
            w.blocks.insert(w.blocks.begin() + static_cast<long>(bi) + 1, std::move(moved));
            applied = true;
          }
        }
        if (!applied) throw std::logic_error("normalize: no block carries the remaining units");
        c = canonical_chain(std::move(c));
      }
    }
  }
  return c;
}

namespace {

void append_letter(std::string& out, char letter, const Int& e) {
  if (e == 0) return;
  if (!out.empty() && out.back() != ' ') out += ' ';
  out += letter;
  if (e != 1) out += "^" + e.get_str();
}

}  // namespace

std::string word_str(const Word& w, const GroupSpec& g) {
  if (w.empty()) return "1";
  std::string out;
  for (const Word::Block& b : w.blocks)
    for (size_t j = 0; j < b.exps.size(); ++j)
      append_letter(out, g.gen_letter(b.factor, static_cast<int>(j)), b.exps[j]);
  return out;
}

std::string chain_str(const Chain& c, const GroupSpec& g) {
  if (c.terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < c.terms.size(); ++i) {
    Rat coeff = c.terms[i].coeff;
    if (i == 0) {
      if (coeff < 0) out += "- ";
    } else {
      out += coeff < 0 ? " - " : " + ";
    }
    Rat mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) out += rat_str(mag) + " * ";
    out += word_str(c.terms[i].word, g);
  }
  return out;
}

std::string group_str(const GroupSpec& g) {
  std::ostringstream out;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i) out << "; ";
    out << "abelian " << g.factors[i].name << " = ";
    for (size_t j = 0; j < g.factors[i].gens.size(); ++j) {
      if (j) out << ", ";
      out << g.factors[i].gens[j];
    }
  }
  for (const AmalgCoord& coord : g.coords) {
    out << "; amalg ";
    for (int i = 0; i < g.num_factors(); ++i) {
      if (i) out << " = ";
      out << g.gen_letter(i, coord.gen[i]) << '^';
      if (coord.finite)
        out << coord.exp[i].get_str();
      else
        out << "inf";
    }
  }
  return out.str();
}

}  // namespace scl
