#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qpi/free_core.hpp"
#include "qpi/pi_arith.hpp"

namespace qpi {

// A tower word is a plain Word in the canonical flat spelling produced by
// normal_form; equality of elements is equality of spellings.
using TowerWord = Word;

struct RootAdjunction {
    int index;         // j, 1-based position in the tower
    Word base;         // u_j: canonical spelling over letters of rank < j,
                       // cyclically reduced, rotated t-first/H-last when its
                       // content rank is positive
    long long degree;  // s_j >= 2, in Z_pi
    int letter;        // generator index of t_j
    int level;
    Word beta_base;    // beta image of base, frozen at adjunction time

    bool operator==(const RootAdjunction&) const = default;
};

class Tower {
public:
    Tower(Alphabet base, PiSet pi);

    const Alphabet& alphabet() const { return alphabet_; }
    int base_generators() const { return base_gens_; }
    const PiSet& pi() const { return pi_; }
    int rank() const { return static_cast<int>(adjs_.size()); }
    const RootAdjunction& adjunction(int j) const;  // 1-based
    const std::vector<RootAdjunction>& adjunctions() const { return adjs_; }

    int letter_rank(int gen) const;  // 0 for base generators, j for t_j
    int letter_level(int gen) const; // 0 for base generators, adjunction level for t_j
    int content_rank(const Word& w) const;

    // true iff this tower's alphabet and adjunction list extend other's
    bool extends(const Tower& other) const;

    Tower adjoin_root(const Word& u, long long s) const;
    friend struct TowerExtension adjoin_root_ex(const Tower& tw, const Word& u,
                                                long long s);

    int conjugacy_budget = 20000;

private:
    Alphabet alphabet_;
    int base_gens_ = 0;
    PiSet pi_;
    std::vector<RootAdjunction> adjs_;
    std::vector<int> ranks_;  // rank per generator index
};

struct TowerExtension {
    Tower tower;
    Word rotation;  // stored base = rotation^-1 * u * rotation
    int letter;     // generator index of the new t
};
TowerExtension adjoin_root_ex(const Tower& tw, const Word& u, long long s);

TowerWord normal_form(const Tower& tw, const Word& raw);
bool equal(const Tower& tw, const Word& x, const Word& y);
TowerWord tmul(const Tower& tw, const Word& x, const Word& y);
TowerWord tinv(const Tower& tw, const Word& x);
TowerWord tpow(const Tower& tw, const Word& x, long long e);
TowerWord tconj(const Tower& tw, const Word& c, const Word& x);  // nf(c^-1 x c)

// number of maximal t_j-runs in the canonical spelling of x
long long t_length(const Tower& tw, const Word& x, int j);

// k with x = u_j^k, if any (unique when present)
std::optional<long long> power_of_u(const Tower& tw, int j, const Word& x);

// canonical spelling of u_j^k
Word u_power(const Tower& tw, int j, long long k);

// decomposition of canonical x at rank j into H-pieces and t_j-run exponents:
// x = pieces[0] t^exps[0] pieces[1] ... t^exps[n-1] pieces[n]
struct RankSyllables {
    std::vector<Word> pieces;
    std::vector<long long> exps;
};
RankSyllables split_at_rank(const Tower& tw, const Word& x, int j);

// a = u_j^k * rep with rep the shortlex-least member of the right coset <u_j>a
std::pair<long long, Word> coset_decompose(const Tower& tw, int j, const Word& a);

struct TowerCyclic {
    Word core;        // minimal (t-run counts from the top rank down, then
                      // flat length) among conjugates reachable by the move set
    Word conjugator;  // x = conjugator * core * conjugator^-1
};
TowerCyclic cyclic_reduce_t(const Tower& tw, const Word& x);

struct TowerRoot {
    Word conjugator;
    Word core;          // cyclically reduced, not a proper power within budget
    long long exponent; // >= 1; x = conjugator * core^exponent * conjugator^-1
};
TowerRoot root_extract_t(const Tower& tw, const Word& x);  // throws on identity

enum class SearchOutcome { Found, NotFound, Exhausted };
struct ConjSearchResult {
    SearchOutcome outcome;
    Word conj;  // conj^-1 * x * conj = y when Found
};
ConjSearchResult conjugate_search(const Tower& tw, const Word& x, const Word& y,
                                  int budget);

// section beta: a free word over the d's and t's with normal_form(beta(x)) = x
// and beta(u_j^n) = beta(u_j)^n for every adjoined base
Word beta(const Tower& tw, const Word& x);

// V_n selection: cyclically minimal primitive elements of length <= m_n with
// pairwise non-conjugate centralizers, maximal, greedy in shortlex order
std::vector<Word> select_vn(const Tower& tw, const PiSet& pi, int n);

} // namespace qpi
