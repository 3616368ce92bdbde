#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpi/fg_solver.hpp"
#include "qpi/qgroup.hpp"

namespace qpi {

// One factor of an equation over F^{Q_pi}: a variable with an integer power,
// or a coefficient base^exp with base a word over the tower alphabet.
struct EqAtom {
    bool is_var = false;
    int var = -1;
    long long power = 1;  // for variables
    Word base;            // for coefficients
    PiRational exp;       // for coefficients

    static EqAtom variable(int v, long long p = 1) {
        EqAtom a;
        a.is_var = true;
        a.var = v;
        a.power = p;
        return a;
    }
    static EqAtom coefficient(Word w, PiRational e = PiRational(1, 1)) {
        EqAtom a;
        a.base = std::move(w);
        a.exp = e;
        return a;
    }
};
using Equation = std::vector<EqAtom>;  // product of atoms = 1

struct EquationSystem {
    std::shared_ptr<const Tower> tower;  // alphabet, pi, declared roots
    std::vector<std::string> variables;
    std::vector<Equation> equations;
    std::vector<int> inequations;  // variables required != 1
};

// number of factor symbols of an equation (atom count, as written)
std::size_t equation_symbols(const Equation& eq);

// Fractional coefficients base^(p/q) are replaced by fresh variables z with
// z^q * base^-p = 1; solution sets correspond by forgetting the z's.
EquationSystem eliminate_coefficients(const EquationSystem& sys);

// A triangular system is an EquationSystem whose equations have <= 3 symbols
// and whose coefficients carry integer exponents.
using TriangularSystem = EquationSystem;

// Splits every equation with k > 3 symbols via fresh variables, k - 3 splits
// per equation; solution sets correspond by forgetting the fresh variables.
TriangularSystem triangularize(const EquationSystem& sys);

struct SolutionVector {
    std::shared_ptr<const Tower> tower;
    std::vector<Word> words;     // one per variable
    std::vector<long long> tau;  // summed t_j-syllable counts, j = 1..rank
};
SolutionVector make_solution(std::shared_ptr<const Tower> tw,
                             std::vector<Word> words);

// total order refining the product order on tau vectors: total syllable sum
// first, then lexicographic; returns -1, 0, or 1
int tau_compare(const SolutionVector& a, const SolutionVector& b);

// Rank reduction at the top adjunction: each variable is decomposed as either
// a single lower-rank piece or A t^(s m + r) B with one t-run; the equations
// become a residual triangular system over the lower ranks (seam products are
// u-powers, the boundary carries one u-power) plus the recorded free
// equations, side constraints, and the exponent relation.
struct RankReduction {
    int rank = 0;  // the adjunction index that was peeled
    // per original variable: runless (A names the piece, r = m = -1) or
    // one-run (X = A t^(s m + r) B)
    struct Decomp {
        int var;
        std::string A, B;
        long long m = -1, r = -1;
        bool has_run() const { return r >= 0; }
    };
    std::vector<Decomp> decomps;
    TriangularSystem residual;            // over ranks < rank, piece variables
    std::map<std::string, Word> piece_witness;  // witness values of the pieces
    std::vector<std::string> first_type;   // decomposition equations, as text
    std::vector<std::string> second_type;  // seam equations Z = u^q, as text
    std::vector<std::string> constraints;  // memberships, commutations, linear
};

// Witness-driven reduction: the witness fixes every integer datum (m, r, seam
// u-powers); the residual's solutions are in bijection with the original
// solutions sharing that pattern. Throws ShapeError when a witness word has
// more than one t-run at the top rank.
RankReduction reduce_rank(const TriangularSystem& sys, const SolutionVector& witness);

// Symbolic-enumerative mode: all decomposition patterns with |m| <= m_bound
// and seam powers |q| <= q_bound, as candidate reductions.
std::vector<RankReduction> reduce_rank_candidates(const TriangularSystem& sys,
                                                  long long m_bound,
                                                  long long q_bound);

// reconstruct original-variable words from a solution of the residual
std::vector<Word> reconstruct_solution(const TriangularSystem& sys,
                                       const RankReduction& red,
                                       const std::map<std::string, Word>& pieces);

// cap on the number of roots adjoined per level: 3M
long long level_bound(long long M);

// explicit configuration-count bound on the total tower rank worth searching;
// astronomically conservative by design, overridable via budgets
Int psi_bound(long long M, const PiSet& pi, long long Lbar, long long Ltilde);

// Shrinkable-piece length systems: per piece, l_1 + s = l_2 with s in {4..8},
// plus equality ties; realized as a nonnegative linear system.
struct PieceDesc {
    int nsub = 3;   // maximal shrinkable subwords in the piece, >= 3
    long long s = 4;  // pseudoangle constant, in {4..8}
    // (subword index a, subword index b) with equal lengths; global indices
    std::vector<std::pair<int, int>> ties;
    std::vector<int> positive;  // locally indexed subwords with length > 0
};
struct ShrinkablePieceSystem {
    int nvars = 0;
    LinearDiophantineSystem lin;
};
ShrinkablePieceSystem build_length_system(const std::vector<PieceDesc>& pieces);

// largest component of the least solution, the middle-strip cap
long long length_cap(const ShrinkablePieceSystem& sys, long long cap);

// Depth systems: equations x_i +- x_j = s d and x_i + x_j = x_k over
// nonnegative integers, d in Z_pi with d >= 2.
struct StripEq {
    enum Kind { SumIsSD, DiffIsSD, SumIsVar } kind = SumIsSD;
    int i = 0, j = 0, k = 0;  // variable indices; k used by SumIsVar
    long long s = 1;          // strip power coefficient on d
};
struct DepthSystem {
    int nvars = 0;  // depth variables; d is appended as index nvars
    LinearDiophantineSystem lin;
};
DepthSystem build_depth_system(const std::vector<StripEq>& strips, int nvars,
                               long long M, const PiSet& pi);

// line-oriented serialization for inspection and golden tests
std::string serialize(const EquationSystem& sys);
std::string serialize(const RankReduction& red);
std::string serialize(const LinearDiophantineSystem& sys);

} // namespace qpi
