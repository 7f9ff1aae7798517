#pragma once

#include <string>
#include <vector>

#include "scl/master.hpp"

namespace scl {

// Arc-label balance equations for the pieces of a cut surface. Column c is
// one glued arc, held by exactly one piece on each of two distinct factors;
// blocks[f] is the {0,1} incidence of factor f's pieces against the columns,
// with exactly one 1 per block that a column touches. The label of an arc is
// read from its lower factor, so the row of factor f sees the column with
// sign +1 when f == col_factors[c].first and -1 when f == col_factors[c]
// .second. rhs[f][row] in Z^k is the class the row's labels must add up to,
// in units of the amalgamating subgroup; summing every equation cancels each
// column, so all rhs vectors together sum to zero.
struct GluingSystem {
  int k = 0;
  int num_cols = 0;
  std::vector<MatZ> blocks;
  std::vector<std::vector<VecZ>> rhs;
  std::vector<std::pair<int, int>> col_factors;  // (lower, upper) per column

  int num_rows() const;
  void add_col(int lower, int upper, int row_lower, int row_upper);
};

// Echelon form reached by the structured elimination: rows of the first
// factor are kept as pivots, each later row first clears the pivot columns
// of earlier factors and then chains within its own factor. Every surviving
// row keeps entries in {-1, 0, 1} and a +-1 lead, each finalized row reduces
// at most one other row, and rows that vanish must carry zero rhs.
struct GluingReduction {
  std::vector<VecZ> rows;  // signed, entries in {-1, 0, 1}
  std::vector<VecZ> rhs;   // transformed right-hand sides
  std::vector<int> lead;   // lead column per row, distinct across rows
  std::vector<int> factor; // block the row originated from
  std::vector<int> uses;   // times the row eliminated an entry of a later row
};

GluingReduction reduce_gluing(const GluingSystem& gs);

// Integral arc labels solving the system, free columns set to zero. Throws
// std::invalid_argument when the system is inconsistent.
std::vector<VecZ> solve_gluing(const GluingSystem& gs);

// A loop of sigma edges added between two rows of distinct factors so their
// clusters' deficits cancel: the boundary circle it creates on row_a's piece
// is labelled `label`, the one on row_b's piece -label. rows are local to
// the factor's block.
struct SigmaLoop {
  int factor_a = -1;
  int row_a = -1;
  int factor_b = -1;
  int row_b = -1;
  VecZ label;
};

// Arc labels plus the fewest sigma loops making every cluster of rows
// balance: clusters (connected components under shared columns) are grouped
// into a maximum number of zero-sum families, each family threaded by a path
// of loops carrying the running sums. When consecutive clusters sit in one
// factor the path detours through a host row of another factor, which sees
// the label and its negative and stays balanced.
struct MinimizedGluing {
  std::vector<VecZ> labels;
  std::vector<SigmaLoop> loops;
};

MinimizedGluing minimize_loops(const GluingSystem& gs);

// The generous loop insertion: one unit loop per unit of deficit, positive
// labels glued to negative ones, any surplus balanced by extra pairs on the
// first component of the opposite factor. Components with zero deficit get
// nothing. Returns (component_a, component_b, label as seen from a).
struct UnitLoop {
  int comp_a = -1;
  int comp_b = -1;
  VecZ label;
};

std::vector<UnitLoop> insert_sigma_loops(const std::vector<VecZ>& deficits_a,
                                         const std::vector<VecZ>& deficits_b, int k);

// One planar piece of a cut admissible surface, mapping to a single factor.
// copies identical copies exist, each carrying the listed tau and sigma edge
// counts. circles counts the boundary circles closing the genuine sigma
// support, one per connected component; dummy_circles counts the boundary
// circles carrying abelian loop words, at least one per distinct dummy sigma
// edge and at most one per instance (a circle may wrap its word several
// times). Doubling the surface duplicates a piece with in_place false; one
// with in_place true doubles its counts in place and keeps its circles, so
// its Euler characteristic stays constant as the degree grows.
struct SurfacePiece {
  int factor = -1;
  Int copies = 1;
  bool in_place = false;
  Int circles = 0;
  Int dummy_circles = 0;
  std::vector<std::pair<int, Int>> taus;    // (tau id, count per copy)
  std::vector<std::pair<int, Int>> sigmas;  // (sigma id, count per copy)
};

// count glued arcs between two pieces: sigma_a instances on piece_a's copies
// pair with sigma_b instances on piece_b's. Both sides of the junction are
// labelled explicitly; a valid gluing has label_a + label_b = 0.
struct ArcGluing {
  int piece_a = -1;
  int piece_b = -1;
  int sigma_a = -1;
  int sigma_b = -1;
  VecZ label_a;
  VecZ label_b;
  Int count = 0;
};

// A separating sigma loop glued between two pieces of distinct factors.
struct LoopGluing {
  int piece_a = -1;
  int piece_b = -1;
  VecZ label_a;
  VecZ label_b;
};

// An admissible surface over the chain as given: the boundary covers each
// word degree * coefficient times in total, and bound = -chi / (2 * degree)
// is an upper bound for scl of the chain.
struct SurfaceCertificate {
  GroupSpec group;
  Chain chain;
  Int degree = 1;
  std::vector<SurfacePiece> pieces;
  std::vector<ArcGluing> arcs;
  std::vector<LoopGluing> loops;
  Int chi = 0;
  Rat bound;
};

// Assembles a certificate from an optimal solution: discs from the packing
// at the smallest integral degree, the leftover realized one piece per
// connected component of its support, arcs labelled by a spanning-tree flow
// and loops threaded through the remaining unbalanced clusters. Pieces that
// cannot balance alone are merged until each class sits integrally in the
// subgroup lattice.
SurfaceCertificate build_certificate(const SclProblem& p, const SclSolution& s);

// Doubles the degree: pieces duplicate or scale per their in_place flag,
// arc counts double, loop labels double but loops are never added. chi of
// every scaling piece is constant, so the bound never worsens and the gap
// to the LP value shrinks geometrically.
SurfaceCertificate double_surface(const SurfaceCertificate& c);

// build_certificate, then double until bound - raw <= eps or max_doublings
// is exhausted.
SurfaceCertificate certificate_within(const SclProblem& p, const SclSolution& s, const Rat& eps,
                                      int max_doublings = 10);

// Independent check of a certificate against the group and chain it claims
// to bound. Recomputes the edge model from scratch, so ids in the
// certificate are interpreted against extract_tau_edges / build_sigma_basis
// order. errors lists every violated condition; pass means none. computed
// is the solver's raw value, compared against bound within eps.
struct CertifyReport {
  bool pass = false;
  std::vector<std::string> errors;
  Rat bound;
  Rat computed;
};

CertifyReport certify(const SurfaceCertificate& c, const Rat& eps);

std::string certificate_text(const SurfaceCertificate& c);
SurfaceCertificate parse_certificate(const std::string& text);

}  // namespace scl
