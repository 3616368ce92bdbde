#include "qpi/tower.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace qpi {

namespace {

Word cat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Word raw_pow(const Word& w, long long k) {
    Word base = k < 0 ? inverse(w) : w;
    long long n = k < 0 ? -k : k;
    Word out;
    for (long long i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
}

struct Parse {
    std::vector<Word> pieces;  // exps.size() + 1 entries
    std::vector<long long> exps;
};

// decompose a reduced word into maximal t-runs and the pieces between them
Parse split_runs(const Word& w, int tgen) {
    Parse P;
    P.pieces.emplace_back();
    bool in_run = false;
    for (const Letter& l : w) {
        if (l.gen == tgen) {
            if (!in_run) {
                P.exps.push_back(0);
                P.pieces.emplace_back();
                in_run = true;
            }
            P.exps.back() += l.sign;
        } else {
            in_run = false;
            P.pieces.back().push_back(l);
        }
    }
    return P;
}

Word nf_at(const Tower& tw, int r, const Word& raw);

// Powers of u can collapse into lower-rank letters (t1^2 spells as a), so
// |u^k| is only bounded below by |k| divided by the product of the degrees at
// or below u's content rank.
long long collapse_factor(const Tower& tw, int uprank) {
    long long D = 1;
    for (int i = 1; i <= uprank; ++i) {
        D *= tw.adjunction(i).degree;
        if (D > 1000000) throw BudgetExceededError("tower degree product too large");
    }
    return D;
}

// k with x = u_j^k, for canonical x of rank <= j-1
std::optional<long long> power_of_u_at(const Tower& tw, int j, const Word& x) {
    if (x.empty()) return 0;
    const RootAdjunction& A = tw.adjunction(j);
    const Word& u = A.base;
    if (tw.content_rank(x) > tw.content_rank(u)) return std::nullopt;
    if (tw.content_rank(u) == 0) {
        // cyclically reduced free base: |u^k| = |k|*|u| exactly
        if (x.size() % u.size() != 0) return std::nullopt;
        long long k = static_cast<long long>(x.size() / u.size());
        if (fpow(u, k) == x) return k;
        if (fpow(u, -k) == x) return -k;
        return std::nullopt;
    }
    long long D = collapse_factor(tw, tw.content_rank(u));
    long long K = static_cast<long long>(x.size()) * D + 2;
    std::size_t stop = (x.size() + u.size() + 4) * static_cast<std::size_t>(D);
    Word uinv = inverse(u);
    Word pos, neg;
    for (long long k = 1; k <= K; ++k) {
        pos = nf_at(tw, j - 1, cat(pos, u));
        if (pos == x) return k;
        neg = nf_at(tw, j - 1, cat(neg, uinv));
        if (neg == x) return -k;
        if (pos.size() > stop && neg.size() > stop) break;
    }
    return std::nullopt;
}

std::pair<long long, Word> coset_decompose_at(const Tower& tw, int j, const Word& a) {
    const Word& u = tw.adjunction(j).base;
    Word uinv = inverse(u);
    long long K = (2 * static_cast<long long>(a.size()) + 2) *
                  collapse_factor(tw, tw.content_rank(u));
    Word best = a;
    long long bestk = 0;
    Word cur = a;
    for (long long k = 1; k <= K; ++k) {  // rep candidates u^-k a
        cur = nf_at(tw, j - 1, cat(uinv, cur));
        if (shortlex_less(cur, best)) { best = cur; bestk = k; }
    }
    cur = a;
    for (long long k = 1; k <= K; ++k) {  // rep candidates u^k a
        cur = nf_at(tw, j - 1, cat(u, cur));
        if (shortlex_less(cur, best)) { best = cur; bestk = -k; }
    }
    return {bestk, best};
}

Word spell(const Parse& P, int tgen) {
    Word out = P.pieces[0];
    for (std::size_t i = 0; i < P.exps.size(); ++i) {
        long long e = P.exps[i];
        int sign = e < 0 ? -1 : 1;
        for (long long k = 0; k < (e < 0 ? -e : e); ++k)
            out.push_back({tgen, sign});
        out.insert(out.end(), P.pieces[i + 1].begin(), P.pieces[i + 1].end());
    }
    return out;
}

// Canonical form at rank r: pieces[0] t^e1 c_1 ... t^en c_n with every
// exponent in {1..s-1} after folding whole u-powers leftward, inner c_i the
// shortlex-least representatives of their right <u>-cosets (never in <u>),
// and the leading piece carrying everything that migrated left.
Word nf_at(const Tower& tw, int r, const Word& raw) {
    Word w = reduce(raw);
    if (r == 0) return w;
    const RootAdjunction& A = tw.adjunction(r);
    const int tg = A.letter;
    const long long s = A.degree;
    Parse P = split_runs(w, tg);
    for (Word& p : P.pieces) p = nf_at(tw, r - 1, p);
    if (P.exps.empty()) return P.pieces[0];

    for (int guard = 0;; ++guard) {
        if (guard > 10000) throw Error("normal form did not converge");
        bool changed = false;

        // drop vanished runs
        for (std::size_t i = 0; i < P.exps.size(); ++i) {
            if (P.exps[i] == 0) {
                P.pieces[i] = nf_at(tw, r - 1, cat(P.pieces[i], P.pieces[i + 1]));
                P.exps.erase(P.exps.begin() + static_cast<long>(i));
                P.pieces.erase(P.pieces.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
        if (changed) continue;

        // pinch inner pieces lying in <u>: t^e1 u^k t^e2 = t^(e1+sk+e2)
        for (std::size_t i = 1; i < P.exps.size(); ++i) {
            auto k = power_of_u_at(tw, r, P.pieces[i]);
            if (k) {
                P.exps[i - 1] += s * *k + P.exps[i];
                P.exps.erase(P.exps.begin() + static_cast<long>(i));
                P.pieces.erase(P.pieces.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
        if (changed) continue;

        // a trailing piece that is a u-power commutes left through the run
        if (!P.exps.empty()) {
            auto k = power_of_u_at(tw, r, P.pieces.back());
            if (k && *k != 0) {
                P.pieces.back().clear();
                std::size_t j = P.pieces.size() - 2;
                P.pieces[j] = nf_at(tw, r - 1, cat(P.pieces[j], raw_pow(A.base, *k)));
                continue;
            }
        }

        // fold exponents into {1..s-1}, pushing u^q left
        for (std::size_t i = 0; i < P.exps.size(); ++i) {
            long long e = ((P.exps[i] % s) + s) % s;
            long long q = (P.exps[i] - e) / s;
            if (q != 0) {
                P.pieces[i] = nf_at(tw, r - 1, cat(P.pieces[i], raw_pow(A.base, q)));
                P.exps[i] = e;
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    if (P.exps.empty()) return P.pieces[0];

    // replace pieces by coset representatives, right to left
    for (std::size_t i = P.exps.size(); i >= 1; --i) {
        auto [k, rep] = coset_decompose_at(tw, r, P.pieces[i]);
        if (k != 0) {
            P.pieces[i] = rep;
            P.pieces[i - 1] = nf_at(tw, r - 1, cat(P.pieces[i - 1], raw_pow(A.base, k)));
        }
    }
    return spell(P, tg);
}

} // namespace

Tower::Tower(Alphabet base, PiSet pi)
    : alphabet_(std::move(base)), base_gens_(alphabet_.size()), pi_(std::move(pi)) {
    ranks_.assign(static_cast<std::size_t>(base_gens_), 0);
}

const RootAdjunction& Tower::adjunction(int j) const {
    if (j < 1 || j > rank()) throw Error("adjunction index out of range");
    return adjs_[static_cast<std::size_t>(j - 1)];
}

int Tower::letter_rank(int gen) const {
    if (gen < 0 || gen >= alphabet_.size()) throw AlphabetError("generator index out of range");
    return ranks_[static_cast<std::size_t>(gen)];
}

int Tower::letter_level(int gen) const {
    int r = letter_rank(gen);
    return r == 0 ? 0 : adjunction(r).level;
}

int Tower::content_rank(const Word& w) const {
    int r = 0;
    for (const Letter& l : w) r = std::max(r, letter_rank(l.gen));
    return r;
}

bool Tower::extends(const Tower& other) const {
    if (pi_ != other.pi_ || base_gens_ != other.base_gens_) return false;
    if (other.rank() > rank()) return false;
    for (int j = 0; j < other.rank(); ++j)
        if (adjs_[static_cast<std::size_t>(j)] != other.adjs_[static_cast<std::size_t>(j)])
            return false;
    for (int g = 0; g < other.alphabet_.size(); ++g)
        if (alphabet_.names()[static_cast<std::size_t>(g)] != other.alphabet_.names()[static_cast<std::size_t>(g)])
            return false;
    return true;
}

TowerWord normal_form(const Tower& tw, const Word& raw) {
    for (const Letter& l : raw)
        if (l.gen < 0 || l.gen >= tw.alphabet().size())
            throw AlphabetError("letter outside tower alphabet");
    return nf_at(tw, tw.content_rank(raw), raw);
}

bool equal(const Tower& tw, const Word& x, const Word& y) {
    return normal_form(tw, x) == normal_form(tw, y);
}

TowerWord tmul(const Tower& tw, const Word& x, const Word& y) {
    return normal_form(tw, cat(x, y));
}

TowerWord tinv(const Tower& tw, const Word& x) {
    return normal_form(tw, inverse(x));
}

TowerWord tpow(const Tower& tw, const Word& x, long long e) {
    return normal_form(tw, raw_pow(x, e));
}

TowerWord tconj(const Tower& tw, const Word& c, const Word& x) {
    return normal_form(tw, cat(cat(inverse(c), x), c));
}

long long t_length(const Tower& tw, const Word& x, int j) {
    if (j < 1 || j > tw.rank()) throw Error("rank out of range");
    Word w = normal_form(tw, x);
    int tg = tw.adjunction(j).letter;
    long long runs = 0;
    bool in_run = false;
    for (const Letter& l : w) {
        if (l.gen == tg) {
            if (!in_run) { ++runs; in_run = true; }
        } else {
            in_run = false;
        }
    }
    return runs;
}

std::optional<long long> power_of_u(const Tower& tw, int j, const Word& x) {
    if (j < 1 || j > tw.rank()) throw Error("rank out of range");
    Word w = normal_form(tw, x);
    if (tw.content_rank(w) > j - 1) return std::nullopt;
    return power_of_u_at(tw, j, w);
}

Word u_power(const Tower& tw, int j, long long k) {
    return nf_at(tw, j - 1, raw_pow(tw.adjunction(j).base, k));
}

RankSyllables split_at_rank(const Tower& tw, const Word& x, int j) {
    Parse P = split_runs(normal_form(tw, x), tw.adjunction(j).letter);
    return {P.pieces, P.exps};
}

std::pair<long long, Word> coset_decompose(const Tower& tw, int j, const Word& a) {
    Word w = normal_form(tw, a);
    if (tw.content_rank(w) > j - 1) throw Error("coset element above rank j-1");
    return coset_decompose_at(tw, j, w);
}

namespace {

// minimization objective for conjugates: t-run counts from the top rank down,
// then flat length
std::vector<long long> cyc_objective(const Tower& tw, const Word& w) {
    std::vector<long long> obj;
    int r = tw.content_rank(w);
    for (int j = r; j >= 1; --j) {
        int tg = tw.adjunction(j).letter;
        long long runs = 0;
        bool in_run = false;
        for (const Letter& l : w) {
            if (l.gen == tg) {
                if (!in_run) { ++runs; in_run = true; }
            } else {
                in_run = false;
            }
        }
        obj.push_back(runs);
    }
    obj.push_back(static_cast<long long>(w.size()));
    return obj;
}

} // namespace

TowerCyclic cyclic_reduce_t(const Tower& tw, const Word& x) {
    Word w = normal_form(tw, x);
    Word conj;
    for (int guard = 0; guard < 10000; ++guard) {
        std::vector<long long> obj = cyc_objective(tw, w);
        bool improved = false;
        std::vector<Word> moves;
        for (std::size_t i = 1; i <= w.size(); ++i)
            moves.emplace_back(w.begin(), w.begin() + static_cast<long>(i));
        for (int j = 1; j <= tw.content_rank(w); ++j) {
            moves.push_back(tw.adjunction(j).base);
            moves.push_back(inverse(tw.adjunction(j).base));
        }
        for (const Word& p : moves) {
            Word cand = tconj(tw, p, w);
            if (cyc_objective(tw, cand) < obj) {
                w = cand;
                conj = tmul(tw, conj, p);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {w, conj};
}

namespace {

// root candidates for a cyclically minimal word of positive content rank;
// returns (core, exponent) with x = extra_conj * core^exponent * extra_conj^-1
RootPower primary_root(const Tower& tw, const Word& x, Word& extra_conj) {
    int r = tw.content_rank(x);
    if (r == 0) {
        RootPower rp = root_extract(x);
        CyclicReduction cr = cyclic_reduce(rp.root);
        extra_conj = cr.conjugator;
        return {cr.core, rp.exponent};
    }
    const RootAdjunction& A = tw.adjunction(r);
    const int tg = A.letter;
    const long long s = A.degree;
    Parse P = split_runs(x, tg);

    // pure t-power: u^K t^e with no other syllables
    if (P.exps.size() == 1 && P.pieces[1].empty()) {
        auto K = power_of_u_at(tw, r, P.pieces[0]);
        if (K) {
            long long tot = *K * s + P.exps[0];
            Word root{Letter{tg, tot < 0 ? -1 : 1}};
            return {root, tot < 0 ? -tot : tot};
        }
    }

    long long m = static_cast<long long>(P.exps.size());
    // rotate to t-first form
    Word y = x;
    Word rot;
    for (long long it = 0; it < 2 * m + 4 && !P.pieces[0].empty(); ++it) {
        Word p0 = P.pieces[0];
        y = tconj(tw, p0, y);
        rot = tmul(tw, rot, p0);
        P = split_runs(y, tg);
        if (static_cast<long long>(P.exps.size()) != m) {
            // conjugation changed the syllable count; fall back
            extra_conj.clear();
            return {x, 1};
        }
    }
    if (!P.pieces[0].empty()) {
        extra_conj.clear();
        return {x, 1};
    }

    std::vector<long long> divisors;
    for (long long d = m; d >= 2; --d)
        if (m % d == 0) divisors.push_back(d);
    for (long long d : divisors) {
        long long mm = m / d;
        // prefix of y covering the first mm runs and the pieces between them
        std::size_t cut = 0;
        long long seen = 0;
        bool in_run = false;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (y[i].gen == tg) {
                if (!in_run) {
                    ++seen;
                    in_run = true;
                    if (seen == mm + 1) { cut = i; break; }
                }
            } else {
                in_run = false;
            }
            cut = i + 1;
        }
        Word pref(y.begin(), y.begin() + static_cast<long>(cut));
        for (long long bb = -3; bb <= 3; ++bb) {
            for (long long aa = -3; aa <= 3; ++aa) {
                Word cand = normal_form(
                    tw, cat(cat(raw_pow(A.base, bb), pref), raw_pow(A.base, aa)));
                if (tpow(tw, cand, d) == y) {
                    extra_conj = rot;
                    return {cand, d};
                }
            }
        }
    }
    extra_conj = rot;
    return {y, 1};
}

} // namespace

TowerRoot root_extract_t(const Tower& tw, const Word& x0) {
    Word xn = normal_form(tw, x0);
    if (xn.empty()) throw IdentityRootError("identity has no primitive root");
    TowerCyclic cyc = cyclic_reduce_t(tw, xn);
    Word conj = cyc.conjugator;
    Word extra;
    RootPower pr = primary_root(tw, cyc.core, extra);
    conj = tmul(tw, conj, extra);
    Word core = pr.root;
    long long m = pr.exponent;

    // chain through adjoined bases: core = u_j^k means core = (t_j^k)^{s_j}
    for (int guard = 0; guard < 64; ++guard) {
        bool matched = false;
        for (int j = tw.rank(); j >= 1 && !matched; --j) {
            const RootAdjunction& A = tw.adjunction(j);
            if (tw.content_rank(core) == j) {
                // one-run core A' t^e B with B A' = u^K is B^-1 t^(sK+e) B;
                // cyclic_reduce_t can leave such spellings behind
                Parse P = split_runs(core, A.letter);
                if (P.exps.size() == 1) {
                    Word C = nf_at(tw, j - 1, cat(P.pieces[1], P.pieces[0]));
                    auto K = power_of_u_at(tw, j, C);
                    if (K) {
                        long long n = A.degree * *K + P.exps[0];
                        Word nc = normal_form(
                            tw, Word{Letter{A.letter, n < 0 ? -1 : 1}});
                        if (n != 0 && (core != nc || n * n != 1)) {
                            conj = tmul(tw, conj, tinv(tw, P.pieces[1]));
                            core = nc;
                            m *= (n < 0 ? -n : n);
                            matched = true;
                            break;
                        }
                    }
                }
            }
            if (tw.content_rank(core) >= j) continue;
            auto k = power_of_u_at(tw, j, core);
            if (k && *k != 0) {
                core = normal_form(tw, Word{Letter{A.letter, *k < 0 ? -1 : 1}});
                m *= (*k < 0 ? -*k : *k) * A.degree;
                matched = true;
                break;
            }
            if (tw.content_rank(core) != tw.content_rank(A.base)) continue;
            for (int sgn : {1, -1}) {
                Word target = sgn == 1 ? A.base : tinv(tw, A.base);
                ConjSearchResult cs = conjugate_search(tw, core, target, 4000);
                if (cs.outcome == SearchOutcome::Found) {
                    conj = tmul(tw, conj, cs.conj);
                    core = normal_form(tw, Word{Letter{A.letter, sgn}});
                    m *= A.degree;
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) break;
    }
    return {conj, core, m};
}

ConjSearchResult conjugate_search(const Tower& tw, const Word& x, const Word& y,
                                  int budget) {
    Word xn = normal_form(tw, x);
    Word yn = normal_form(tw, y);
    if (xn == yn) return {SearchOutcome::Found, {}};
    // elements of H_r that are conjugate in the tower are conjugate in H_r:
    // higher conjugations act through the amalgamated subgroups, which they
    // fix pointwise. So the search stays inside the content rank.
    int r = std::max(tw.content_rank(xn), tw.content_rank(yn));
    if (r == 0) {
        auto c = is_conjugate(xn, yn);
        if (c) return {SearchOutcome::Found, *c};
        return {SearchOutcome::NotFound, {}};
    }
    std::size_t maxlen = std::max(xn.size(), yn.size()) + 4;
    std::map<Word, Word> seen;  // state -> conjugator
    std::deque<Word> queue;
    seen.emplace(xn, Word{});
    queue.push_back(xn);
    std::vector<Word> moves;
    for (int g = 0; g < tw.alphabet().size(); ++g) {
        if (tw.letter_rank(g) > r) continue;
        moves.push_back(Word{Letter{g, 1}});
        moves.push_back(Word{Letter{g, -1}});
    }
    for (int j = 1; j <= tw.rank(); ++j) {
        if (tw.content_rank(tw.adjunction(j).base) > r) continue;
        moves.push_back(tw.adjunction(j).base);
        moves.push_back(inverse(tw.adjunction(j).base));
    }
    int expanded = 0;
    while (!queue.empty()) {
        if (++expanded > budget) return {SearchOutcome::Exhausted, {}};
        Word w = queue.front();
        queue.pop_front();
        const Word c = seen[w];
        for (const Word& p : moves) {
            Word w2 = tconj(tw, p, w);
            if (w2.size() > maxlen) continue;
            if (seen.count(w2)) continue;
            Word c2 = tmul(tw, c, p);
            if (w2 == yn) return {SearchOutcome::Found, c2};
            seen.emplace(w2, c2);
            queue.push_back(w2);
        }
    }
    return {SearchOutcome::NotFound, {}};
}

namespace {

Word beta_rec(const Tower& tw, const Word& x) {
    if (x.empty()) return {};
    int r = tw.content_rank(x);
    // exact powers of adjoined bases, latest adjunction first, so chained
    // roots (u_j itself a power of a later base, or collapsing into rank-0
    // letters) resolve consistently
    for (int j = tw.rank(); j >= 1; --j) {
        const RootAdjunction& A = tw.adjunction(j);
        if (tw.content_rank(A.base) < r) continue;
        auto k = power_of_u_at(tw, j, x);
        if (k && *k != 0) return fpow(A.beta_base, *k);
    }
    if (r == 0) return x;
    const RootAdjunction& A = tw.adjunction(r);
    Parse P = split_runs(x, A.letter);
    auto [K, c] = coset_decompose_at(tw, r, P.pieces[0]);
    Word out;
    std::size_t i0 = 0;
    if (K != 0 && c.empty()) {
        // pure u-power lead folds into the first run: u^K t^e = t^(sK+e)
        long long e = A.degree * K + P.exps[0];
        out = cat(out, raw_pow(Word{Letter{A.letter, 1}}, e));
        out = cat(out, beta_rec(tw, P.pieces[1]));
        i0 = 1;
    } else {
        if (K != 0) out = cat(out, fpow(A.beta_base, K));
        out = cat(out, beta_rec(tw, c));
    }
    for (std::size_t i = i0; i < P.exps.size(); ++i) {
        out = cat(out, raw_pow(Word{Letter{A.letter, 1}}, P.exps[i]));
        out = cat(out, beta_rec(tw, P.pieces[i + 1]));
    }
    return reduce(out);
}

} // namespace

Word beta(const Tower& tw, const Word& x) {
    return beta_rec(tw, normal_form(tw, x));
}

namespace {

// all canonical tower words of flat length <= cap, in shortlex order
std::vector<Word> enumerate_elements(const Tower& tw, long long cap) {
    std::vector<Word> out;
    std::vector<Letter> letters;
    for (int g = 0; g < tw.alphabet().size(); ++g) {
        letters.push_back({g, 1});
        letters.push_back({g, -1});
    }
    std::vector<Word> layer{Word{}};
    out.push_back({});
    for (long long len = 1; len <= cap; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer) {
            for (const Letter& l : letters) {
                if (!w.empty() && w.back() == l.inv()) continue;
                Word w2 = w;
                w2.push_back(l);
                next.push_back(w2);
            }
        }
        for (const Word& w : next)
            if (normal_form(tw, w) == w) out.push_back(w);
        layer = std::move(next);
    }
    return out;
}

} // namespace

std::vector<Word> select_vn(const Tower& tw, const PiSet& pi, int n) {
    if (n < 1) throw Error("select_vn requires n >= 1");
    long long cap = static_cast<long long>(zpi_nth(pi, static_cast<std::size_t>(n)));
    std::vector<Word> kept;       // selected elements
    std::vector<Word> kept_cores; // their primitive cores
    for (const Word& w : enumerate_elements(tw, cap)) {
        if (w.empty()) continue;
        TowerCyclic cyc = cyclic_reduce_t(tw, w);
        if (cyc.core.size() != w.size()) continue;  // not cyclically minimal
        TowerRoot root = root_extract_t(tw, w);
        if (root.exponent != 1) continue;  // not primitive
        bool fresh = true;
        for (const Word& c : kept_cores) {
            for (int sgn : {1, -1}) {
                Word target = sgn == 1 ? c : tinv(tw, c);
                ConjSearchResult cs =
                    conjugate_search(tw, root.core, target, tw.conjugacy_budget);
                if (cs.outcome == SearchOutcome::Exhausted)
                    throw BudgetExceededError("conjugacy budget exhausted in select_vn");
                if (cs.outcome == SearchOutcome::Found) { fresh = false; break; }
            }
            if (!fresh) break;
        }
        if (fresh) {
            kept.push_back(w);
            kept_cores.push_back(root.core);
        }
    }
    return kept;
}

TowerExtension adjoin_root_ex(const Tower& tw, const Word& u_raw, long long s) {
    Word u = normal_form(tw, u_raw);
    if (u.empty()) throw IdentityRootError("cannot adjoin a root of the identity");
    if (s < 2 || !in_zpi(s, tw.pi_))
        throw PiViolationError("root degree " + std::to_string(s) + " not in Z_pi");
    TowerRoot root = root_extract_t(tw, u);
    if (root.exponent != 1)
        throw NotPrimitiveError("root base is a proper power");
    TowerCyclic cyc = cyclic_reduce_t(tw, u);
    if (cyc.core.size() != u.size())
        throw Error("root base must be cyclically reduced");

    // rotate a positive-rank base to t-first/H-last shape so that beta powers
    // concatenate without cancellation
    Word stored = u;
    Word rotation;
    int r = tw.content_rank(u);
    // a base equal to some t_j^+-1 is stored as that single letter; its
    // canonical spelling may be H-first (t_j^-1 spells u_j^-1 t_j^(s-1)) and
    // the rotation loop below cannot fix that
    bool bare_t = false;
    if (r > 0) {
        int tg2 = tw.adjunction(r).letter;
        for (int sgn : {1, -1}) {
            if (equal(tw, u, Word{Letter{tg2, sgn}})) {
                stored = Word{Letter{tg2, sgn}};
                bare_t = true;
                break;
            }
        }
    }
    if (r > 0 && !bare_t) {
        int tg = tw.adjunction(r).letter;
        for (int guard = 0;; ++guard) {
            if (guard > 4 * static_cast<int>(stored.size()) + 8)
                throw Error("cannot rotate root base to t-first form");
            Parse P = split_runs(stored, tg);
            bool tfirst = P.pieces[0].empty();
            bool hlast = !P.pieces.back().empty();
            bool bare_run = P.exps.size() == 1 && P.pieces[0].empty() &&
                            P.pieces[1].empty();
            if (tfirst && (hlast || bare_run)) break;
            Word p;
            if (!P.pieces[0].empty()) {
                p = P.pieces[0];
            } else {
                // starts with a run but ends with one too: rotate past the
                // leading run
                std::size_t i = 0;
                while (i < stored.size() && stored[i].gen == tg) ++i;
                p = Word(stored.begin(), stored.begin() + static_cast<long>(i));
            }
            stored = tconj(tw, p, stored);
            rotation = tmul(tw, rotation, p);
        }
    }

    // same-level non-conjugacy against earlier bases
    int level = 1;
    for (const Letter& l : u) level = std::max(level, tw.letter_level(l.gen) + 1);
    for (const RootAdjunction& A : tw.adjs_) {
        if (A.level != level) continue;
        for (int sgn : {1, -1}) {
            Word target = sgn == 1 ? A.base : tinv(tw, A.base);
            ConjSearchResult cs =
                conjugate_search(tw, stored, target, tw.conjugacy_budget);
            if (cs.outcome == SearchOutcome::Exhausted)
                throw BudgetExceededError("conjugacy budget exhausted validating root base");
            if (cs.outcome == SearchOutcome::Found)
                throw Error("root base conjugate to an existing base at its level");
        }
    }

    Tower ext = tw;
    std::string name = "t" + std::to_string(tw.rank() + 1);
    while (ext.alphabet_.try_index_of(name)) name += "_";
    int letter = ext.alphabet_.add(name);
    ext.ranks_.push_back(tw.rank() + 1);
    RootAdjunction adj;
    adj.index = tw.rank() + 1;
    adj.base = stored;
    adj.degree = s;
    adj.letter = letter;
    adj.level = level;
    adj.beta_base = beta(tw, stored);
    ext.adjs_.push_back(std::move(adj));
    return {std::move(ext), rotation, letter};
}

Tower Tower::adjoin_root(const Word& u, long long s) const {
    return adjoin_root_ex(*this, u, s).tower;
}

} // namespace qpi
