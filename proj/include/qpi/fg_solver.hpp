#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpi/pi_arith.hpp"
#include "qpi/tower.hpp"

namespace qpi {

// One factor of a constrained free-group equation: a signed variable or a
// constant word over the system alphabet.
struct CFTerm {
    bool is_var = false;
    int var = -1;   // variable index
    int sign = 1;   // +-1, for variables
    Word constant;  // for constants

    static CFTerm variable(int v, int s = 1) { return {true, v, s, {}}; }
    static CFTerm word(Word w) { return {false, -1, 1, std::move(w)}; }
};
using CFEquation = std::vector<CFTerm>;  // product of terms = 1

struct CFMembership {
    int var;
    int prefix_gens;  // value must lie in the subgroup on the first k generators
};
struct CFCommutation {
    int var;
    int letter;  // [value, letter] = 1, i.e. value is a power of the letter
};
// sum of coef * int_var + constant = 0
struct CFLinear {
    std::vector<std::pair<int, long long>> terms;  // (int var index, coef)
    long long constant = 0;
};

struct ConstrainedFreeSystem {
    Alphabet alphabet;
    std::vector<std::string> variables;
    std::vector<std::string> int_vars;
    std::vector<CFEquation> equations;
    std::vector<CFMembership> memberships;
    std::vector<CFCommutation> commutations;
    std::vector<CFLinear> linears;
    std::vector<int> inequations;  // variables required != 1
};

struct Assignment {
    std::vector<Word> words;      // one per variable
    std::vector<long long> ints;  // one per integer variable
};

// full post-check: equations reduce to identity, every constraint holds
bool verify_assignment(const ConstrainedFreeSystem& sys, const Assignment& asg);

// complete search over assignments with every word of length <= max_len and
// every integer in [-max_len, max_len]; returns the least assignment in the
// (total word length, per-variable shortlex, then integers ascending) order
std::optional<Assignment> solve_bounded(const ConstrainedFreeSystem& sys,
                                        int max_len);

// Nonnegative linear Diophantine systems: sum coef_i x_i = rhs per row.
struct LinRow {
    std::vector<long long> coef;
    long long rhs = 0;
};
struct LinearDiophantineSystem {
    int nvars = 0;
    std::vector<LinRow> rows;
    int d_var = -1;       // index of d, restricted to Z_pi; -1 when absent
    PiSet pi;             // for d_var
    long long d_min = 1;  // least admissible d
    std::vector<int> positive;  // variables required > 0
    std::vector<int> zero;      // variables required == 0
    bool minimality = false;    // reject solutions with some x divisible by d
};
struct LinResult {
    std::optional<std::vector<long long>> solution;  // lex-least when present
    bool exhausted = false;  // absent but not proven infeasible within cap
};
LinResult solve_lin_dioph(const LinearDiophantineSystem& sys, long long cap);

// Decision front end over F^{Q_pi}; the system type lives in eq_pipeline.
struct EquationSystem;

struct Budgets {
    int max_len = 8;
    int max_rank = 2;
    int max_depth = 20;
    long long lin_cap = 20;
};

enum class Verdict { Solvable, Unsolvable, Unknown };

struct Decision {
    Verdict verdict;
    std::shared_ptr<const Tower> tower;  // witness tower when solvable
    std::vector<Word> witness;           // per system variable, over the tower
    std::string detail;  // binding budget for unknown, refuter for unsolvable
};

Decision decide_system(const EquationSystem& sys, const Budgets& budgets);

} // namespace qpi
