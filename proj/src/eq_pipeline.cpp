#include "qpi/eq_pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace qpi {

namespace {

std::string fresh_name(const std::vector<std::string>& taken,
                       const std::string& stem, int& counter) {
    for (;;) {
        std::string name = stem + std::to_string(++counter);
        if (std::find(taken.begin(), taken.end(), name) == taken.end())
            return name;
    }
}

bool name_taken(const EquationSystem& sys, const std::string& name) {
    if (std::find(sys.variables.begin(), sys.variables.end(), name) !=
        sys.variables.end())
        return true;
    return sys.tower->alphabet().try_index_of(name).has_value();
}

} // namespace

std::size_t equation_symbols(const Equation& eq) {
    std::size_t n = 0;
    for (const EqAtom& a : eq)
        n += a.is_var ? static_cast<std::size_t>(a.power < 0 ? -a.power : a.power)
                      : 1;
    return n;
}

EquationSystem eliminate_coefficients(const EquationSystem& sys) {
    EquationSystem out = sys;
    const Tower& tw = *sys.tower;
    // one fresh variable per distinct (base, exponent) pair
    std::vector<std::pair<std::pair<Word, PiRational>, int>> seen;
    std::vector<Equation> defining;
    int counter = 0;
    for (Equation& eq : out.equations) {
        for (EqAtom& a : eq) {
            if (a.is_var || a.exp.is_integer()) continue;
            if (!in_qpi(a.exp, tw.pi()))
                throw PiViolationError("coefficient exponent not in Q_pi");
            Word base = normal_form(tw, a.base);
            std::pair<Word, PiRational> key{base, a.exp};
            int zvar = -1;
            for (auto& [k, v] : seen)
                if (k == key) { zvar = v; break; }
            if (zvar < 0) {
                std::string name;
                do {
                    name = "z" + std::to_string(++counter);
                } while (name_taken(out, name));
                zvar = static_cast<int>(out.variables.size());
                out.variables.push_back(name);
                seen.push_back({key, zvar});
                // z^q * base^-p = 1
                Equation def;
                def.push_back(EqAtom::variable(zvar, static_cast<long long>(a.exp.den)));
                def.push_back(EqAtom::coefficient(
                    base, PiRational(-a.exp.num, 1)));
                defining.push_back(std::move(def));
            }
            a = EqAtom::variable(zvar, 1);
        }
    }
    for (Equation& d : defining) out.equations.push_back(std::move(d));
    return out;
}

TriangularSystem triangularize(const EquationSystem& sys) {
    TriangularSystem out = sys;
    out.equations.clear();
    int counter = 0;
    for (const Equation& eq : sys.equations) {
        // expand variable powers so every split point is between symbols
        Equation flat;
        for (const EqAtom& a : eq) {
            if (a.is_var && (a.power > 1 || a.power < -1)) {
                long long n = a.power < 0 ? -a.power : a.power;
                for (long long i = 0; i < n; ++i)
                    flat.push_back(EqAtom::variable(a.var, a.power < 0 ? -1 : 1));
            } else {
                flat.push_back(a);
            }
        }
        while (flat.size() > 3) {
            std::string name;
            do {
                name = "v" + std::to_string(++counter);
            } while (name_taken(out, name));
            int v = static_cast<int>(out.variables.size());
            out.variables.push_back(name);
            Equation head(flat.begin(), flat.begin() + 2);
            head.push_back(EqAtom::variable(v, -1));
            out.equations.push_back(std::move(head));
            Equation rest;
            rest.push_back(EqAtom::variable(v, 1));
            rest.insert(rest.end(), flat.begin() + 2, flat.end());
            flat = std::move(rest);
        }
        out.equations.push_back(std::move(flat));
    }
    return out;
}

SolutionVector make_solution(std::shared_ptr<const Tower> tw,
                             std::vector<Word> words) {
    SolutionVector sol;
    sol.tower = tw;
    for (Word& w : words) sol.words.push_back(normal_form(*tw, w));
    sol.tau.assign(static_cast<std::size_t>(tw->rank()), 0);
    for (const Word& w : sol.words)
        for (int j = 1; j <= tw->rank(); ++j)
            sol.tau[static_cast<std::size_t>(j - 1)] += t_length(*tw, w, j);
    return sol;
}

int tau_compare(const SolutionVector& a, const SolutionVector& b) {
    if (!a.tower->extends(*b.tower) || !b.tower->extends(*a.tower))
        throw LineageError("tau comparison across different towers");
    long long sa = 0, sb = 0;
    for (long long t : a.tau) sa += t;
    for (long long t : b.tau) sb += t;
    if (sa != sb) return sa < sb ? -1 : 1;
    if (a.tau != b.tau) return a.tau < b.tau ? -1 : 1;
    return 0;
}

namespace {

// token of a flattened equation at the top rank: a residual piece variable
// occurrence, a constant word of lower rank, or a t-run
struct Token {
    enum Kind { Piece, Constant, Run } kind;
    int piece = -1;  // residual variable index
    int sign = 1;
    Word constant;
    // run exponent s*m + r, with per-variable symbols; constant runs have
    // var = -1 and the value folded into (m, r)
    int run_var = -1;  // original variable index owning the run, -1 constant
    int run_sign = 1;
    long long m = 0, r = 0;
};

struct Emitter {
    const TriangularSystem& sys;
    const Tower& tw;
    int rank;
    long long s;
    int tletter;

    RankReduction red;
    std::vector<std::string> piece_names;
    int piece_counter = 0;

    explicit Emitter(const TriangularSystem& s_) : sys(s_), tw(*s_.tower) {
        rank = tw.rank();
        if (rank < 1) throw Error("rank reduction requires an adjoined root");
        s = tw.adjunction(rank).degree;
        tletter = tw.adjunction(rank).letter;
        red.rank = rank;
        red.residual.tower = sys.tower;
    }

    int add_piece(const Word& witness_value, bool record_witness) {
        std::string name;
        do {
            name = "Y" + std::to_string(++piece_counter);
        } while (name_taken(sys, name));
        piece_names.push_back(name);
        red.residual.variables.push_back(name);
        if (record_witness) red.piece_witness[name] = witness_value;
        return static_cast<int>(piece_names.size()) - 1;
    }

    // decompose every variable, witness-driven
    void decompose_witness(const SolutionVector& witness) {
        for (std::size_t v = 0; v < sys.variables.size(); ++v) {
            const Word& w = witness.words[v];
            RankSyllables syl = split_at_rank(tw, w, rank);
            RankReduction::Decomp d;
            d.var = static_cast<int>(v);
            if (syl.exps.empty()) {
                d.A = piece_names[static_cast<std::size_t>(add_piece(w, true))];
            } else if (syl.exps.size() == 1) {
                int a = add_piece(syl.pieces[0], true);
                int b = add_piece(syl.pieces[1], true);
                d.A = piece_names[static_cast<std::size_t>(a)];
                d.B = piece_names[static_cast<std::size_t>(b)];
                long long e = syl.exps[0];
                d.r = ((e % s) + s) % s;
                d.m = (e - d.r) / s;
                red.first_type.push_back(
                    sys.variables[v] + " = " + d.A + " T_" + sys.variables[v] +
                    " t" + std::to_string(rank) + "^" + std::to_string(d.r) +
                    " " + d.B);
                red.constraints.push_back("[T_" + sys.variables[v] + ", t" +
                                          std::to_string(rank) + "] = 1");
                red.constraints.push_back("m_" + sys.variables[v] + " = " +
                                          std::to_string(d.m));
            } else {
                throw ShapeError("witness word has more than one t-run at the top rank");
            }
            red.constraints.push_back(d.A + " in F_" + std::to_string(rank - 1));
            if (!d.B.empty())
                red.constraints.push_back(d.B + " in F_" + std::to_string(rank - 1));
            red.decomps.push_back(std::move(d));
        }
    }

    // flatten one equation into tokens under the chosen decompositions
    std::vector<Token> flatten(const Equation& eq) {
        std::vector<Token> toks;
        auto push_constant = [&](const Word& cw) {
            Word c = normal_form(tw, cw);
            RankSyllables syl = split_at_rank(tw, c, rank);
            for (std::size_t i = 0; i <= syl.exps.size(); ++i) {
                if (!syl.pieces[i].empty()) {
                    Token t;
                    t.kind = Token::Constant;
                    t.constant = syl.pieces[i];
                    toks.push_back(std::move(t));
                }
                if (i < syl.exps.size()) {
                    Token t;
                    t.kind = Token::Run;
                    long long e = syl.exps[i];
                    t.r = ((e % s) + s) % s;
                    t.m = (e - t.r) / s;
                    toks.push_back(std::move(t));
                }
            }
        };
        auto push_var = [&](int var, int sign) {
            const RankReduction::Decomp& d =
                red.decomps[static_cast<std::size_t>(var)];
            auto piece_tok = [&](const std::string& name, int sgn) {
                Token t;
                t.kind = Token::Piece;
                t.piece = static_cast<int>(
                    std::find(piece_names.begin(), piece_names.end(), name) -
                    piece_names.begin());
                t.sign = sgn;
                toks.push_back(std::move(t));
            };
            if (!d.has_run()) {
                piece_tok(d.A, sign);
                return;
            }
            Token run;
            run.kind = Token::Run;
            run.run_var = var;
            run.run_sign = sign;
            run.m = d.m;
            run.r = d.r;
            if (sign > 0) {
                piece_tok(d.A, 1);
                toks.push_back(run);
                piece_tok(d.B, 1);
            } else {
                piece_tok(d.B, -1);
                toks.push_back(run);
                piece_tok(d.A, -1);
            }
        };
        for (const EqAtom& a : eq) {
            if (a.is_var) {
                long long n = a.power < 0 ? -a.power : a.power;
                for (long long i = 0; i < n; ++i)
                    push_var(a.var, a.power < 0 ? -1 : 1);
            } else {
                if (!a.exp.is_integer())
                    throw ShapeError("rank reduction requires integer coefficients");
                push_constant(tpow(tw, normal_form(tw, a.base), static_cast<long long>(a.exp.num)));
            }
        }
        return toks;
    }

    long long run_value(const Token& t) const {
        long long e = s * t.m + t.r;
        return t.run_sign < 0 ? -e : e;
    }

    // segment of non-run tokens -> residual equation atoms
    Equation segment_atoms(const std::vector<Token>& seg) const {
        Equation eq;
        for (const Token& t : seg) {
            if (t.kind == Token::Piece)
                eq.push_back(EqAtom::variable(t.piece, t.sign));
            else
                eq.push_back(EqAtom::coefficient(t.constant, PiRational(1, 1)));
        }
        return eq;
    }

    Word segment_value(const std::vector<Token>& seg,
                       const std::map<std::string, Word>& pieces) const {
        Word w;
        for (const Token& t : seg) {
            if (t.kind == Token::Piece) {
                Word p = pieces.at(piece_names[static_cast<std::size_t>(t.piece)]);
                w = tmul(tw, w, t.sign > 0 ? p : tinv(tw, p));
            } else {
                w = tmul(tw, w, t.constant);
            }
        }
        return w;
    }

    // emit the residual equations of one flattened equation; q values are
    // supplied per inner segment, the boundary power is derived
    bool emit_equation(const std::vector<Token>& toks,
                       const std::vector<long long>& qs, int eq_index) {
        std::vector<std::vector<Token>> segs(1);
        std::vector<Token> runs;
        for (const Token& t : toks) {
            if (t.kind == Token::Run) {
                runs.push_back(t);
                segs.emplace_back();
            } else {
                segs.back().push_back(t);
            }
        }
        std::size_t R = runs.size();
        if (R == 0) {
            red.residual.equations.push_back(segment_atoms(segs[0]));
            return true;
        }
        if (qs.size() != R - 1) throw Error("seam power count mismatch");
        const Word& u = tw.adjunction(rank).base;
        long long total = 0;
        for (const Token& t : runs) total += run_value(t);
        for (long long q : qs) total += s * q;
        if (total % s != 0) return false;
        long long G = total / s;
        for (std::size_t i = 1; i < R; ++i) {
            Equation eq = segment_atoms(segs[i]);
            eq.push_back(EqAtom::coefficient(u, PiRational(-qs[i - 1], 1)));
            red.second_type.push_back("Z" + std::to_string(eq_index) + "_" +
                                      std::to_string(i) + " = (u" +
                                      std::to_string(rank) + ")^" +
                                      std::to_string(qs[i - 1]));
            red.residual.equations.push_back(std::move(eq));
        }
        Equation boundary = segment_atoms(segs[0]);
        boundary.push_back(EqAtom::coefficient(u, PiRational(G, 1)));
        Equation tail = segment_atoms(segs[R]);
        boundary.insert(boundary.end(), tail.begin(), tail.end());
        red.residual.equations.push_back(std::move(boundary));
        {
            std::ostringstream line;
            line << "eq" << eq_index << ": sum of run exponents";
            for (long long q : qs) line << " + " << s << "*" << q;
            line << " = " << s << "*" << G;
            red.constraints.push_back(line.str());
        }
        return true;
    }

    void finish() {
        // inequations on runless variables carry over to their piece
        for (int v : sys.inequations) {
            const RankReduction::Decomp& d =
                red.decomps[static_cast<std::size_t>(v)];
            if (!d.has_run()) {
                auto it = std::find(piece_names.begin(), piece_names.end(), d.A);
                red.residual.inequations.push_back(
                    static_cast<int>(it - piece_names.begin()));
            }
        }
        red.residual = triangularize(red.residual);
    }
};

} // namespace

RankReduction reduce_rank(const TriangularSystem& sys, const SolutionVector& witness) {
    if (witness.words.size() != sys.variables.size())
        throw CoverageError("witness does not cover every variable");
    Emitter em(sys);
    em.decompose_witness(witness);
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
        std::vector<Token> toks = em.flatten(sys.equations[e]);
        // witness-driven seam powers: each inner segment evaluates to a u-power
        std::vector<std::vector<Token>> segs(1);
        for (const Token& t : toks) {
            if (t.kind == Token::Run)
                segs.emplace_back();
            else
                segs.back().push_back(t);
        }
        std::vector<long long> qs;
        for (std::size_t i = 1; i + 1 < segs.size(); ++i) {
            Word val = em.segment_value(segs[i], em.red.piece_witness);
            auto q = power_of_u(em.tw, em.rank, val);
            if (!q)
                throw ShapeError("witness seam is not a u-power; pattern not reducible");
            qs.push_back(*q);  // segment = u^q
        }
        if (!em.emit_equation(toks, qs, static_cast<int>(e)))
            throw ShapeError("witness run exponents do not balance");
    }
    em.finish();
    return em.red;
}

std::vector<RankReduction> reduce_rank_candidates(const TriangularSystem& sys,
                                                  long long m_bound,
                                                  long long q_bound) {
    std::vector<RankReduction> out;
    // per-variable decomposition patterns: runless, or (m, r) with one run
    const Tower& tw = *sys.tower;
    int rank = tw.rank();
    if (rank < 1) throw Error("rank reduction requires an adjoined root");
    long long s = tw.adjunction(rank).degree;
    std::size_t nv = sys.variables.size();
    std::vector<std::vector<std::pair<long long, long long>>> choices(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        choices[v].push_back({-1, -1});  // runless
        for (long long m = -m_bound; m <= m_bound; ++m)
            for (long long r = 0; r < s; ++r)
                if (m != 0 || r != 0) choices[v].push_back({m, r});
    }
    std::vector<std::size_t> pick(nv, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
        if (v < nv) {
            for (pick[v] = 0; pick[v] < choices[v].size(); ++pick[v]) rec(v + 1);
            return;
        }
        Emitter em(sys);
        for (std::size_t i = 0; i < nv; ++i) {
            auto [m, r] = choices[i][pick[i]];
            RankReduction::Decomp d;
            d.var = static_cast<int>(i);
            if (r < 0) {
                d.A = em.piece_names[static_cast<std::size_t>(em.add_piece({}, false))];
            } else {
                d.A = em.piece_names[static_cast<std::size_t>(em.add_piece({}, false))];
                d.B = em.piece_names[static_cast<std::size_t>(em.add_piece({}, false))];
                d.m = m;
                d.r = r;
            }
            em.red.decomps.push_back(std::move(d));
        }
        // enumerate seam powers equation by equation
        std::vector<std::vector<Token>> flat;
        std::vector<std::size_t> inner;
        for (const Equation& eq : sys.equations) {
            flat.push_back(em.flatten(eq));
            std::size_t runs = 0;
            for (const Token& t : flat.back())
                if (t.kind == Token::Run) ++runs;
            inner.push_back(runs > 0 ? runs - 1 : 0);
        }
        // emit every seam combination as its own candidate
        std::function<void(std::size_t, Emitter&)> all_emit =
            [&](std::size_t e, Emitter& base) {
                if (e == flat.size()) {
                    Emitter done = base;
                    done.finish();
                    out.push_back(done.red);
                    return;
                }
                std::vector<long long> qs(inner[e]);
                std::function<void(std::size_t)> seams = [&](std::size_t i) {
                    if (i == qs.size()) {
                        Emitter next = base;
                        if (next.emit_equation(flat[e], qs, static_cast<int>(e)))
                            all_emit(e + 1, next);
                        return;
                    }
                    for (qs[i] = -q_bound; qs[i] <= q_bound; ++qs[i]) seams(i + 1);
                };
                seams(0);
            };
        all_emit(0, em);
    };
    rec(0);
    return out;
}

std::vector<Word> reconstruct_solution(const TriangularSystem& sys,
                                       const RankReduction& red,
                                       const std::map<std::string, Word>& pieces) {
    const Tower& tw = *sys.tower;
    long long s = tw.adjunction(red.rank).degree;
    int tletter = tw.adjunction(red.rank).letter;
    std::vector<Word> out;
    for (const RankReduction::Decomp& d : red.decomps) {
        if (!d.has_run()) {
            out.push_back(normal_form(tw, pieces.at(d.A)));
        } else {
            Word w = pieces.at(d.A);
            w = tmul(tw, w, tpow(tw, Word{Letter{tletter, 1}}, s * d.m + d.r));
            w = tmul(tw, w, pieces.at(d.B));
            out.push_back(w);
        }
    }
    return out;
}

long long level_bound(long long M) { return 3 * M; }

Int psi_bound(long long M, const PiSet& pi, long long Lbar, long long Ltilde) {
    if (M <= 0) return 0;
    // configurations = (triangle shapes over <= 6M signed symbols)^M
    //                * depth vectors <= Ltilde over <= 3M roots
    //                * connector lengths <= Lbar over <= 3M connectors
    Int shapes = 1;
    Int sym = 6 * Int(M);
    Int tri = sym * sym * sym;
    for (long long i = 0; i < M; ++i) shapes *= tri;
    Int depth = 1, conn = 1;
    for (long long i = 0; i < 3 * M; ++i) {
        depth *= Int(Ltilde) + 1;
        conn *= Int(Lbar) + 1;
    }
    (void)pi;
    return shapes * depth * conn + 1;
}

ShrinkablePieceSystem build_length_system(const std::vector<PieceDesc>& pieces) {
    ShrinkablePieceSystem out;
    std::vector<long long> base;  // first variable index of each piece
    for (const PieceDesc& p : pieces) {
        if (p.nsub < 3)
            throw ShapeError("piece has fewer than three maximal shrinkable subwords");
        if (p.s < 4 || p.s > 8)
            throw ShapeError("pseudoangle constant outside {4..8}");
        base.push_back(out.nvars);
        out.nvars += p.nsub;
    }
    out.lin.nvars = out.nvars;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        // l_{i,1} + s = l_{i,2}
        LinRow row;
        row.coef.assign(static_cast<std::size_t>(out.nvars), 0);
        row.coef[static_cast<std::size_t>(base[i])] = 1;
        row.coef[static_cast<std::size_t>(base[i] + 1)] = -1;
        row.rhs = -pieces[i].s;
        out.lin.rows.push_back(std::move(row));
        for (auto [a, b] : pieces[i].ties) {
            LinRow tie;
            tie.coef.assign(static_cast<std::size_t>(out.nvars), 0);
            tie.coef[static_cast<std::size_t>(a)] += 1;
            tie.coef[static_cast<std::size_t>(b)] += -1;
            tie.rhs = 0;
            out.lin.rows.push_back(std::move(tie));
        }
        for (int pos : pieces[i].positive)
            out.lin.positive.push_back(static_cast<int>(base[i]) + pos);
    }
    return out;
}

long long length_cap(const ShrinkablePieceSystem& sys, long long cap) {
    LinResult res = solve_lin_dioph(sys.lin, cap);
    if (!res.solution) return 0;
    long long best = 0;
    for (long long v : *res.solution) best = std::max(best, v);
    return best;
}

DepthSystem build_depth_system(const std::vector<StripEq>& strips, int nvars,
                               long long M, const PiSet& pi) {
    if (nvars > 3 * M)
        throw ShapeError("depth system exceeds the 3M variable bound");
    DepthSystem out;
    out.nvars = nvars;
    out.lin.nvars = nvars + 1;  // + d
    out.lin.d_var = nvars;
    out.lin.pi = pi;
    out.lin.d_min = 2;
    out.lin.minimality = true;
    for (const StripEq& e : strips) {
        LinRow row;
        row.coef.assign(static_cast<std::size_t>(nvars) + 1, 0);
        switch (e.kind) {
            case StripEq::SumIsSD:
                row.coef[static_cast<std::size_t>(e.i)] += 1;
                row.coef[static_cast<std::size_t>(e.j)] += 1;
                row.coef[static_cast<std::size_t>(nvars)] -= e.s;
                break;
            case StripEq::DiffIsSD:
                row.coef[static_cast<std::size_t>(e.i)] += 1;
                row.coef[static_cast<std::size_t>(e.j)] -= 1;
                row.coef[static_cast<std::size_t>(nvars)] -= e.s;
                break;
            case StripEq::SumIsVar:
                row.coef[static_cast<std::size_t>(e.i)] += 1;
                row.coef[static_cast<std::size_t>(e.j)] += 1;
                row.coef[static_cast<std::size_t>(e.k)] -= 1;
                break;
        }
        row.rhs = 0;
        out.lin.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

std::string print_rational(const PiRational& q) {
    if (q.is_integer()) return q.num.str();
    return "(" + q.num.str() + "/" + q.den.str() + ")";
}

std::string print_atom(const EquationSystem& sys, const EqAtom& a) {
    if (a.is_var) {
        std::string s = sys.variables[static_cast<std::size_t>(a.var)];
        if (a.power != 1) s += "^" + std::to_string(a.power);
        return s;
    }
    std::string base = print_word(sys.tower->alphabet(), a.base);
    bool simple = a.base.size() == 1 && a.base[0].sign > 0;
    std::string s = simple ? base : "(" + base + ")";
    if (!(a.exp == PiRational(1, 1))) s += "^" + print_rational(a.exp);
    return s;
}

} // namespace

std::string serialize(const EquationSystem& sys) {
    std::ostringstream os;
    const Tower& tw = *sys.tower;
    os << "generators";
    for (int g = 0; g < tw.base_generators(); ++g)
        os << " " << tw.alphabet().name_of(g);
    os << "\n";
    if (!tw.pi().primes().empty()) {
        os << "pi ";
        for (std::size_t i = 0; i < tw.pi().primes().size(); ++i)
            os << (i ? "," : "") << tw.pi().primes()[i].str();
        os << "\n";
    }
    for (const RootAdjunction& adj : tw.adjunctions())
        os << "root " << tw.alphabet().name_of(adj.letter) << " = ("
           << print_word(tw.alphabet(), adj.base) << ")^(1/" << adj.degree
           << ")\n";
    if (!sys.variables.empty()) {
        os << "vars";
        for (const std::string& v : sys.variables) os << " " << v;
        os << "\n";
    }
    for (const Equation& eq : sys.equations) {
        if (eq.empty()) {
            os << "1 = 1\n";
            continue;
        }
        for (std::size_t i = 0; i < eq.size(); ++i)
            os << (i ? " * " : "") << print_atom(sys, eq[i]);
        os << " = 1\n";
    }
    for (int v : sys.inequations)
        os << sys.variables[static_cast<std::size_t>(v)] << " != 1\n";
    return os.str();
}

std::string serialize(const RankReduction& red) {
    std::ostringstream os;
    os << "rank " << red.rank << "\n";
    for (const std::string& l : red.first_type) os << "first-type " << l << "\n";
    for (const std::string& l : red.second_type) os << "second-type " << l << "\n";
    for (const std::string& l : red.constraints) os << "constraint " << l << "\n";
    os << "residual:\n" << serialize(red.residual);
    return os.str();
}

std::string serialize(const LinearDiophantineSystem& sys) {
    std::ostringstream os;
    for (const LinRow& r : sys.rows) {
        bool first = true;
        for (int j = 0; j < sys.nvars; ++j) {
            long long c = r.coef[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            os << (first ? "" : " + ") << c << "*x" << j;
            first = false;
        }
        if (first) os << "0";
        os << " = " << r.rhs << "\n";
    }
    if (sys.d_var >= 0) {
        os << "d: x" << sys.d_var << " in Z_pi, >= " << sys.d_min << "\n";
        if (sys.minimality) os << "minimality\n";
    }
    for (int p : sys.positive) os << "x" << p << " > 0\n";
    for (int z : sys.zero) os << "x" << z << " = 0\n";
    return os.str();
}

} // namespace qpi
