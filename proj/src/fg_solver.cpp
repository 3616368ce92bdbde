#include "qpi/fg_solver.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <numeric>

#include "qpi/eq_pipeline.hpp"

namespace qpi {

namespace {

Word eval_equation(const ConstrainedFreeSystem& sys, const CFEquation& eq,
                   const std::vector<Word>& words) {
    Word acc;
    for (const CFTerm& t : eq) {
        if (t.is_var) {
            const Word& v = words[static_cast<std::size_t>(t.var)];
            acc = fmul(acc, t.sign > 0 ? v : inverse(v));
        } else {
            acc = fmul(acc, t.constant);
        }
    }
    (void)sys;
    return acc;
}

bool word_is_power_of(const Word& w, int letter) {
    for (const Letter& l : w)
        if (l.gen != letter) return false;
    return true;  // reduced w on one generator is a power of it
}

bool check_var_constraints(const ConstrainedFreeSystem& sys, int var,
                           const Word& w) {
    for (const CFMembership& m : sys.memberships) {
        if (m.var != var) continue;
        for (const Letter& l : w)
            if (l.gen >= m.prefix_gens) return false;
    }
    for (const CFCommutation& c : sys.commutations)
        if (c.var == var && !word_is_power_of(w, c.letter)) return false;
    return true;
}

bool check_linears(const ConstrainedFreeSystem& sys,
                   const std::vector<long long>& ints) {
    for (const CFLinear& lin : sys.linears) {
        long long sum = lin.constant;
        for (auto [v, c] : lin.terms) sum += c * ints[static_cast<std::size_t>(v)];
        if (sum != 0) return false;
    }
    return true;
}

} // namespace

bool verify_assignment(const ConstrainedFreeSystem& sys, const Assignment& asg) {
    if (asg.words.size() != sys.variables.size() ||
        asg.ints.size() != sys.int_vars.size())
        throw CoverageError("assignment does not cover every variable");
    for (const CFEquation& eq : sys.equations)
        if (!eval_equation(sys, eq, asg.words).empty()) return false;
    for (std::size_t v = 0; v < asg.words.size(); ++v)
        if (!check_var_constraints(sys, static_cast<int>(v), asg.words[v]))
            return false;
    if (!check_linears(sys, asg.ints)) return false;
    for (int v : sys.inequations)
        if (asg.words[static_cast<std::size_t>(v)].empty()) return false;
    return true;
}

namespace {

// reduced words of length <= max_len over the allowed generators, in shortlex
// order; when a commutation pins the variable to powers of one letter, only
// those powers are produced
std::vector<Word> var_candidates(const ConstrainedFreeSystem& sys, int var,
                                 int max_len) {
    int allowed = sys.alphabet.size();
    for (const CFMembership& m : sys.memberships)
        if (m.var == var) allowed = std::min(allowed, m.prefix_gens);
    std::vector<int> pinned;  // letters the value must be a power of
    for (const CFCommutation& c : sys.commutations)
        if (c.var == var) pinned.push_back(c.letter);
    bool skip_identity =
        std::find(sys.inequations.begin(), sys.inequations.end(), var) !=
        sys.inequations.end();

    std::vector<Word> out;
    if (!pinned.empty()) {
        // powers of a single letter; two distinct pinned letters force identity
        bool same = std::all_of(pinned.begin(), pinned.end(),
                                [&](int l) { return l == pinned[0]; });
        if (!skip_identity) out.push_back({});
        if (same && pinned[0] < allowed) {
            for (int k = 1; k <= max_len; ++k) {
                out.push_back(Word(static_cast<std::size_t>(k),
                                   Letter{pinned[0], 1}));
                out.push_back(Word(static_cast<std::size_t>(k),
                                   Letter{pinned[0], -1}));
            }
        }
        std::sort(out.begin(), out.end(), shortlex_less);
        return out;
    }

    std::vector<Word> layer{Word{}};
    if (!skip_identity) out.push_back({});
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer) {
            for (int g = 0; g < allowed; ++g) {
                for (int s : {1, -1}) {
                    Letter l{g, s};
                    if (!w.empty() && w.back() == l.inv()) continue;
                    Word w2 = w;
                    w2.push_back(l);
                    next.push_back(std::move(w2));
                }
            }
        }
        std::sort(next.begin(), next.end(), shortlex_less);
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// least integer assignment satisfying the linear relations, each value in
// [-bound, bound], lexicographic with -bound first
std::optional<std::vector<long long>> solve_ints(const ConstrainedFreeSystem& sys,
                                                 long long bound) {
    std::vector<long long> vals(sys.int_vars.size(), 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == vals.size()) return check_linears(sys, vals);
        for (long long v = -bound; v <= bound; ++v) {
            vals[i] = v;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return vals;
}

} // namespace

std::optional<Assignment> solve_bounded(const ConstrainedFreeSystem& sys,
                                        int max_len) {
    // integer part is independent of the word part
    auto ints = solve_ints(sys, max_len);
    if (!ints) return std::nullopt;

    std::size_t nv = sys.variables.size();
    std::vector<std::vector<Word>> cands;
    for (std::size_t v = 0; v < nv; ++v)
        cands.push_back(var_candidates(sys, static_cast<int>(v), max_len));

    // equations checkable once their last-referenced variable is assigned
    std::vector<std::vector<const CFEquation*>> ready(nv + 1);
    for (const CFEquation& eq : sys.equations) {
        int last = -1;
        for (const CFTerm& t : eq)
            if (t.is_var) last = std::max(last, t.var);
        ready[static_cast<std::size_t>(last + 1)].push_back(&eq);
    }

    std::vector<Word> words(nv);
    std::function<bool(std::size_t, long long)> rec = [&](std::size_t i,
                                                          long long budget) {
        for (const CFEquation* eq : ready[i])
            if (!eval_equation(sys, *eq, words).empty()) return false;
        if (i == nv) return budget == 0;  // exact total, for the length order
        for (const Word& w : cands[i]) {
            long long len = static_cast<long long>(w.size());
            if (len > budget) break;  // candidates are shortlex sorted
            words[i] = w;
            if (rec(i + 1, budget - len)) return true;
        }
        return false;
    };
    long long cap = static_cast<long long>(nv) * max_len;
    for (long long total = 0; total <= cap; ++total) {
        std::fill(words.begin(), words.end(), Word{});
        if (rec(0, total)) {
            Assignment asg{words, *ints};
            if (!verify_assignment(sys, asg))
                throw Error("solver produced an assignment that fails verification");
            return asg;
        }
    }
    return std::nullopt;
}

namespace {

using Rat = boost::multiprecision::cpp_rational;

} // namespace

LinResult solve_lin_dioph(const LinearDiophantineSystem& sys, long long cap) {
    int n = sys.nvars;
    std::vector<std::vector<Rat>> m;  // augmented rows
    for (const LinRow& r : sys.rows) {
        if (static_cast<int>(r.coef.size()) != n)
            throw ShapeError("row width does not match variable count");
        std::vector<Rat> row(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = r.coef[static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(n)] = r.rhs;
        m.push_back(std::move(row));
    }
    for (int z : sys.zero) {
        std::vector<Rat> row(static_cast<std::size_t>(n) + 1, 0);
        row[static_cast<std::size_t>(z)] = 1;
        m.push_back(std::move(row));
    }

    // rational row echelon; pivot_col[r] for each used row
    std::vector<int> pivot_col;
    std::size_t rr = 0;
    for (int col = 0; col < n && rr < m.size(); ++col) {
        std::size_t piv = rr;
        while (piv < m.size() && m[piv][static_cast<std::size_t>(col)] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rr], m[piv]);
        Rat p = m[rr][static_cast<std::size_t>(col)];
        for (auto& x : m[rr]) x /= p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rr) continue;
            Rat f = m[i][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(n); ++j)
                m[i][j] -= f * m[rr][j];
        }
        pivot_col.push_back(col);
        ++rr;
    }
    for (std::size_t i = rr; i < m.size(); ++i)
        if (m[i][static_cast<std::size_t>(n)] != 0)
            return {std::nullopt, false};  // 0 = nonzero: inconsistent

    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    if (free_cols.size() > 6)
        throw BudgetExceededError("too many free variables for enumeration");

    // admissible values per free column
    std::vector<std::vector<long long>> ranges;
    for (int c : free_cols) {
        std::vector<long long> vals;
        if (c == sys.d_var) {
            for (long long v = std::max<long long>(sys.d_min, 1); v <= cap; ++v)
                if (in_zpi(v, sys.pi)) vals.push_back(v);
        } else {
            for (long long v = 0; v <= cap; ++v) vals.push_back(v);
        }
        ranges.push_back(std::move(vals));
    }

    std::optional<std::vector<long long>> best;
    std::vector<long long> freev(free_cols.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i < free_cols.size()) {
            for (long long v : ranges[i]) {
                freev[i] = v;
                rec(i + 1);
            }
            return;
        }
        std::vector<long long> vals(static_cast<std::size_t>(n), 0);
        for (std::size_t k = 0; k < free_cols.size(); ++k)
            vals[static_cast<std::size_t>(free_cols[k])] = freev[k];
        for (std::size_t r = 0; r < pivot_col.size(); ++r) {
            Rat v = m[r][static_cast<std::size_t>(n)];
            for (std::size_t k = 0; k < free_cols.size(); ++k)
                v -= m[r][static_cast<std::size_t>(free_cols[k])] * freev[k];
            if (boost::multiprecision::denominator(v) != 1) return;
            Int numr = boost::multiprecision::numerator(v);
            if (numr < 0 || numr > cap) return;  // all values live in [0, cap]
            vals[static_cast<std::size_t>(pivot_col[r])] =
                static_cast<long long>(numr);
        }
        if (sys.d_var >= 0) {
            long long d = vals[static_cast<std::size_t>(sys.d_var)];
            if (d < std::max<long long>(sys.d_min, 1) || !in_zpi(d, sys.pi))
                return;
            if (sys.minimality && d >= 2) {
                for (int j = 0; j < n; ++j) {
                    long long x = vals[static_cast<std::size_t>(j)];
                    if (j != sys.d_var && x > 0 && x % d == 0) return;
                }
            }
        }
        for (int p : sys.positive)
            if (vals[static_cast<std::size_t>(p)] <= 0) return;
        for (int z : sys.zero)
            if (vals[static_cast<std::size_t>(z)] != 0) return;
        if (!best || std::lexicographical_compare(vals.begin(), vals.end(),
                                                  best->begin(), best->end()))
            best = vals;
    };
    rec(0);
    if (best) return {best, false};
    // with no free variables the rational solution is unique, so failure is a
    // proof of infeasibility rather than cap exhaustion
    return {std::nullopt, !free_cols.empty()};
}

namespace {

// product of the equation atoms under an assignment, as a Q-group element;
// fractional coefficient exponents may extend the tower chain
QElement q_eval(std::shared_ptr<const Tower> tw, const Equation& eq,
                const std::vector<Word>& words) {
    QElement acc = q_identity(tw);
    for (const EqAtom& a : eq) {
        QElement v;
        if (a.is_var) {
            v = q_pow(q_element(tw, words[static_cast<std::size_t>(a.var)]),
                      a.power);
        } else {
            v = qexp(q_element(tw, a.base), a.exp);
        }
        acc = q_mul(acc, v);
    }
    return acc;
}

bool q_satisfies(const EquationSystem& sys, std::shared_ptr<const Tower> tw,
                 const std::vector<Word>& words) {
    for (const Equation& eq : sys.equations)
        if (!is_identity(q_eval(tw, eq, words))) return false;
    for (int v : sys.inequations)
        if (normal_form(*tw, words[static_cast<std::size_t>(v)]).empty())
            return false;
    return true;
}

bool has_inequation(const EquationSystem& sys, int var) {
    return std::find(sys.inequations.begin(), sys.inequations.end(), var) !=
           sys.inequations.end();
}

// fill every unset witness slot: identity, or the first generator when the
// variable carries an inequation (no equation constrains it)
std::optional<Decision> finish_witness(const EquationSystem& sys,
                                       std::shared_ptr<const Tower> tw,
                                       std::vector<std::optional<Word>> partial) {
    std::vector<Word> words;
    for (std::size_t v = 0; v < sys.variables.size(); ++v) {
        Word w;
        if (partial[v]) {
            w = normal_form(*tw, *partial[v]);
        } else if (has_inequation(sys, static_cast<int>(v))) {
            if (tw->base_generators() == 0)
                return Decision{Verdict::Unsolvable, nullptr, {},
                                "no generators to witness an inequation"};
            w = Word{Letter{0, 1}};
        }
        words.push_back(std::move(w));
    }
    if (!q_satisfies(sys, tw, words))
        throw Error("decision produced a witness that fails verification");
    return Decision{Verdict::Solvable, tw, words, ""};
}

// x^p = c with c nontrivial: roots are unique, so the canonical candidate
// either works or nothing does
Decision solve_power(const EquationSystem& sys, int var, long long p,
                     QElement c) {
    std::vector<std::optional<Word>> partial(sys.variables.size());
    if (p == 0) {
        if (!is_identity(c))
            return {Verdict::Unsolvable, nullptr, {},
                    "constant part of the equation is nontrivial"};
        return *finish_witness(sys, c.tower, partial);
    }
    if (p < 0) {
        p = -p;
        c = q_inv(c);
    }
    if (is_identity(c)) {
        if (has_inequation(sys, var))
            return {Verdict::Unsolvable, nullptr, {},
                    "x^p = 1 forces x = 1 in a torsion-free group"};
        partial[static_cast<std::size_t>(var)] = Word{};
        return *finish_witness(sys, c.tower, partial);
    }
    QElement x;
    if (p == 1) {
        x = c;
    } else {
        // split p into its pi-part and the rest
        long long p_out = p;
        for (const Int& q : c.tower->pi().primes()) {
            long long qq = q.convert_to<long long>();
            while (p_out % qq == 0) p_out /= qq;
        }
        if (p_out == 1) {
            x = qexp(c, PiRational(1, p));
        } else {
            TowerRoot r = root_extract_t(*c.tower, c.word);
            if (r.exponent % p_out != 0)
                return {Verdict::Unsolvable, nullptr, {},
                        "required root degree is not available: the core is "
                        "primitive and its exponent is not divisible"};
            const Tower& T = *c.tower;
            Word x0 = tmul(T, tmul(T, r.conjugator,
                                   tpow(T, r.core, r.exponent / p_out)),
                           tinv(T, r.conjugator));
            x = qexp(QElement{c.tower, x0}, PiRational(1, p / p_out));
        }
    }
    partial[static_cast<std::size_t>(var)] = x.word;
    return *finish_witness(sys, x.tower, partial);
}

// x C x^-1 D = 1, i.e. x conjugates C to D^-1
Decision solve_conjugacy(const EquationSystem& sys, int var, QElement C,
                         QElement D) {
    std::shared_ptr<const Tower> tw = D.tower;  // deepest in the chain
    const Tower& T = *tw;
    Word cw = normal_form(T, C.word);
    Word dw = normal_form(T, tinv(T, D.word));  // target D^-1
    std::vector<std::optional<Word>> partial(sys.variables.size());
    if (cw.empty() || dw.empty()) {
        if (cw != dw)
            return {Verdict::Unsolvable, nullptr, {},
                    "only the identity is conjugate to the identity"};
        return *finish_witness(sys, tw, partial);
    }
    if (cw == dw) {
        // x must centralize C; C itself works when nontriviality is required
        partial[static_cast<std::size_t>(var)] =
            has_inequation(sys, var) ? cw : Word{};
        return *finish_witness(sys, tw, partial);
    }
    TowerRoot rc = root_extract_t(T, cw);
    TowerRoot rd = root_extract_t(T, dw);
    if (rc.exponent != rd.exponent)
        return {Verdict::Unsolvable, nullptr, {},
                "maximal root exponents differ, so the elements are not "
                "conjugate"};
    Word conj;
    if (T.content_rank(rc.core) == 0 && T.content_rank(rd.core) == 0) {
        auto g = is_conjugate(rc.core, rd.core);
        if (!g)
            return {Verdict::Unsolvable, nullptr, {},
                    "primitive cores are not conjugate in the free part"};
        conj = *g;
    } else {
        ConjSearchResult res =
            conjugate_search(T, rc.core, rd.core, T.conjugacy_budget);
        if (res.outcome == SearchOutcome::NotFound)
            return {Verdict::Unsolvable, nullptr, {},
                    "primitive cores are not conjugate"};
        if (res.outcome == SearchOutcome::Exhausted)
            return {Verdict::Unknown, nullptr, {},
                    "conjugacy search budget exhausted"};
        conj = res.conj;
    }
    // conj^-1 rc.core conj = rd.core, so x = h_d conj^-1 h_c^-1 maps C to D^-1
    Word x = tmul(T, tmul(T, rd.conjugator, tinv(T, conj)),
                  tinv(T, rc.conjugator));
    if (has_inequation(sys, var) && normal_form(T, x).empty())
        x = tmul(T, x, cw);  // slide along the centralizer of C
    partial[static_cast<std::size_t>(var)] = x;
    return *finish_witness(sys, tw, partial);
}

// single-equation carve-outs: pure power and conjugacy in one variable
std::optional<Decision> decide_one_equation(const EquationSystem& sys) {
    const Equation& eq = sys.equations[0];
    int var = -1;
    std::size_t var_atoms = 0;
    for (const EqAtom& a : eq) {
        if (!a.is_var) continue;
        if (var < 0) var = a.var;
        if (a.var != var) return std::nullopt;  // two distinct variables
        ++var_atoms;
    }
    auto coeff = [&](const EqAtom& a) {
        return qexp(q_element(sys.tower, a.base), a.exp);
    };
    if (var < 0) {
        // constant equation
        QElement acc = q_identity(sys.tower);
        for (const EqAtom& a : eq) acc = q_mul(acc, coeff(a));
        if (!is_identity(acc))
            return Decision{Verdict::Unsolvable, nullptr, {},
                            "constant equation is nontrivial"};
        return *finish_witness(sys, acc.tower,
                               std::vector<std::optional<Word>>(
                                   sys.variables.size()));
    }
    std::size_t n = eq.size();
    auto at = [&](std::size_t i) -> const EqAtom& { return eq[i % n]; };

    // pure power: the variable atoms form one cyclically contiguous block
    std::size_t start = n;
    if (var_atoms == n) {
        start = 0;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            if (at(i).is_var && !at(i + n - 1).is_var) {
                start = i;
                break;
            }
    }
    bool contiguous = start < n;
    for (std::size_t k = 0; contiguous && k < var_atoms; ++k)
        if (!at(start + k).is_var) contiguous = false;
    if (contiguous) {
        long long p = 0;
        for (const EqAtom& a : eq)
            if (a.is_var) p += a.power;
        QElement C = q_identity(sys.tower);
        for (std::size_t k = var_atoms; k < n; ++k)
            C = q_mul(C, coeff(at(start + k)));
        return solve_power(sys, var, p, q_inv(C));  // x^p = C^-1
    }

    // conjugacy: exactly two occurrences with powers +1 and -1
    if (var_atoms != 2) return std::nullopt;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i)
        if (eq[i].is_var) pos.push_back(i);
    long long p0 = eq[pos[0]].power, p1 = eq[pos[1]].power;
    if (!((p0 == 1 && p1 == -1) || (p0 == -1 && p1 == 1))) return std::nullopt;
    std::size_t plus = p0 == 1 ? pos[0] : pos[1];
    // rotate to x C x^-1 D
    QElement C = q_identity(sys.tower);
    std::size_t i = plus + 1;
    for (; !at(i).is_var; ++i) C = q_mul(C, coeff(at(i)));
    QElement D = q_identity(C.tower);
    for (++i; i < plus + n; ++i) D = q_mul(D, coeff(at(i)));
    return solve_conjugacy(sys, var, C, D);
}

// canonical words over the tower, grouped by flat length; generation stops
// early when the raw layer would exceed the word budget
struct CandidatePool {
    const Tower& tw;
    std::vector<std::vector<Word>> by_len{{Word{}}};  // index = length
    std::vector<Word> layer{Word{}};                  // reduced, last length
    bool capped = false;

    explicit CandidatePool(const Tower& t) : tw(t) {}

    bool ensure(int len) {
        static constexpr std::size_t kLayerBudget = 400000;
        while (static_cast<int>(by_len.size()) <= len) {
            std::size_t width =
                static_cast<std::size_t>(tw.alphabet().size()) * 2;
            if (layer.size() * width > kLayerBudget) {
                capped = true;
                return false;
            }
            std::vector<Word> next;
            for (const Word& w : layer) {
                for (int g = 0; g < tw.alphabet().size(); ++g) {
                    for (int s : {1, -1}) {
                        Letter l{g, s};
                        if (!w.empty() && w.back() == l.inv()) continue;
                        Word w2 = w;
                        w2.push_back(l);
                        next.push_back(std::move(w2));
                    }
                }
            }
            std::vector<Word> canon;
            for (const Word& w : next)
                if (normal_form(tw, w) == w) canon.push_back(w);
            std::sort(canon.begin(), canon.end(), shortlex_less);
            by_len.push_back(std::move(canon));
            layer = std::move(next);
        }
        return true;
    }
};

Word t_eval(const Tower& tw, const Equation& eq, const std::vector<Word>& words) {
    Word acc;
    for (const EqAtom& a : eq) {
        if (a.is_var) {
            acc = tmul(tw, acc,
                       tpow(tw, words[static_cast<std::size_t>(a.var)], a.power));
        } else {
            acc = tmul(tw, acc,
                       tpow(tw, normal_form(tw, a.base),
                            static_cast<long long>(a.exp.num)));
        }
    }
    return acc;
}

struct TowerSearchHit {
    long long total = 0;
    long long tau = 0;
    std::vector<Word> words;
};

// least solution of the integer-coefficient system over one tower: smallest
// total flat length, then per-variable shortlex; nullopt when the budget runs
// out first
std::optional<TowerSearchHit> search_tower(const TriangularSystem& sys,
                                           const Tower& tw, int max_len,
                                           bool& capped) {
    CandidatePool pool(tw);
    std::size_t nv = sys.variables.size();
    std::vector<std::vector<const Equation*>> ready(nv + 1);
    for (const Equation& eq : sys.equations) {
        int last = -1;
        for (const EqAtom& a : eq)
            if (a.is_var) last = std::max(last, a.var);
        ready[static_cast<std::size_t>(last + 1)].push_back(&eq);
    }
    std::vector<bool> ineq(nv, false);
    for (int v : sys.inequations) ineq[static_cast<std::size_t>(v)] = true;

    std::vector<Word> words(nv);
    std::function<bool(std::size_t, long long)> rec = [&](std::size_t i,
                                                          long long budget) {
        for (const Equation* eq : ready[i])
            if (!t_eval(tw, *eq, words).empty()) return false;
        if (i == nv) return budget == 0;
        for (int len = 0; len <= std::min<long long>(budget, max_len); ++len) {
            if (len == 0 && ineq[i]) continue;
            if (!pool.ensure(len)) break;
            for (const Word& w : pool.by_len[static_cast<std::size_t>(len)]) {
                words[i] = w;
                if (rec(i + 1, budget - len)) return true;
            }
        }
        return false;
    };
    long long cap = static_cast<long long>(nv) * max_len;
    for (long long total = 0; total <= cap; ++total) {
        std::fill(words.begin(), words.end(), Word{});
        if (rec(0, total)) {
            TowerSearchHit hit;
            hit.total = total;
            hit.words = words;
            for (const Word& w : words)
                for (int j = 1; j <= tw.rank(); ++j)
                    hit.tau += t_length(tw, w, j);
            return hit;
        }
        // nothing longer is reachable once generation stopped early
        if (pool.capped &&
            total >= static_cast<long long>(pool.by_len.size() - 1) *
                         static_cast<long long>(nv))
            break;
    }
    capped = capped || pool.capped;
    return std::nullopt;
}

Decision decide_general(const EquationSystem& sys, const Budgets& budgets) {
    EquationSystem elim = eliminate_coefficients(sys);
    TriangularSystem tri = triangularize(elim);

    // candidate root bases: primitive cores of the coefficients, then the
    // base generators
    std::vector<Word> bases;
    auto add_base = [&](const Word& w) {
        if (w.empty()) return;
        for (const Word& b : bases)
            if (b == w) return;
        bases.push_back(w);
    };
    for (const Equation& eq : tri.equations)
        for (const EqAtom& a : eq)
            if (!a.is_var) {
                Word w = normal_form(*sys.tower, a.base);
                if (w.empty()) continue;
                add_base(root_extract_t(*sys.tower, w).core);
            }
    for (int g = 0; g < sys.tower->base_generators(); ++g)
        add_base(Word{Letter{g, 1}});

    std::vector<long long> primes;
    for (const Int& p : sys.tower->pi().primes())
        primes.push_back(p.convert_to<long long>());

    // breadth-first tower enumeration up to max_rank extra adjunctions
    std::vector<std::shared_ptr<const Tower>> towers{sys.tower};
    std::vector<int> depth{0};
    static constexpr std::size_t kMaxTowers = 256;
    for (std::size_t i = 0; i < towers.size() && towers.size() < kMaxTowers;
         ++i) {
        if (depth[i] >= budgets.max_rank) continue;
        for (const Word& b : bases) {
            for (long long p : primes) {
                Word nb = normal_form(*towers[i], b);
                if (nb.empty()) continue;
                bool dup = false;
                for (const RootAdjunction& adj : towers[i]->adjunctions())
                    if (adj.degree == p && equal(*towers[i], adj.base, nb))
                        dup = true;
                if (dup) continue;
                try {
                    towers.push_back(std::make_shared<const Tower>(
                        towers[i]->adjoin_root(nb, p)));
                    depth.push_back(depth[i] + 1);
                } catch (const Error&) {
                    // not primitive, identity, or otherwise unusable
                }
                if (towers.size() >= kMaxTowers) break;
            }
            if (towers.size() >= kMaxTowers) break;
        }
    }

    bool capped = false;
    std::optional<TowerSearchHit> best;
    std::shared_ptr<const Tower> best_tower;
    for (const auto& tp : towers) {
        auto hit = search_tower(tri, *tp, budgets.max_len, capped);
        if (!hit) continue;
        if (!best || hit->total < best->total ||
            (hit->total == best->total && hit->tau < best->tau)) {
            best = hit;
            best_tower = tp;
        }
    }
    if (best) {
        std::vector<Word> witness(best->words.begin(),
                                  best->words.begin() +
                                      static_cast<long long>(
                                          sys.variables.size()));
        if (!q_satisfies(sys, best_tower, witness))
            throw Error("decision produced a witness that fails verification");
        return {Verdict::Solvable, best_tower, witness, ""};
    }

    // the explicit completeness bound is astronomical; only tiny systems with
    // huge budgets ever clear it
    long long maxc = 0;
    for (const Equation& eq : tri.equations)
        for (const EqAtom& a : eq)
            if (!a.is_var)
                maxc = std::max(maxc, static_cast<long long>(a.base.size()));
    Int psi = psi_bound(static_cast<long long>(tri.equations.size()),
                        sys.tower->pi(), maxc, maxc);
    if (!capped && Int(budgets.max_rank) >= psi && Int(budgets.max_len) >= psi)
        return {Verdict::Unsolvable, nullptr, {},
                "complete search below the structure bound found no solution"};
    return {Verdict::Unknown, nullptr, {},
            capped ? "candidate generation hit the word budget at max-len " +
                         std::to_string(budgets.max_len)
                   : "search exhausted at max-len " +
                         std::to_string(budgets.max_len) + ", max-rank " +
                         std::to_string(budgets.max_rank)};
}

} // namespace

Decision decide_system(const EquationSystem& sys, const Budgets& budgets) {
    if (sys.equations.empty())
        return *finish_witness(
            sys, sys.tower,
            std::vector<std::optional<Word>>(sys.variables.size()));
    if (sys.equations.size() == 1) {
        auto d = decide_one_equation(sys);
        if (d) return *d;
    }
    return decide_general(sys, budgets);
}

} // namespace qpi
