#include "qpi/system_io.hpp"

#include <cctype>
#include <sstream>

namespace qpi {

namespace {

struct Token {
    enum Kind { Ident, Number, Sym, End } kind = End;
    std::string text;
    int col = 0;  // 1-based
};

std::vector<Token> lex_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) ||
                    line[j] == '_'))
                ++j;
            out.push_back({Token::Ident, line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() &&
                   std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            out.push_back({Token::Number, line.substr(i, j - i), col});
            i = j;
        } else if (c == '!' && i + 1 < line.size() && line[i + 1] == '=') {
            out.push_back({Token::Sym, "!=", col});
            i += 2;
        } else if (std::string("=^*/(),[]-").find(c) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, c), col});
            ++i;
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'",
                             lineno, col);
        }
    }
    out.push_back({Token::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

struct LineParser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    int lineno;

    const Token& peek() const { return toks[pos]; }
    const Token& next() { return toks[pos++]; }
    bool at_sym(const std::string& s) const {
        return peek().kind == Token::Sym && peek().text == s;
    }
    void expect_sym(const std::string& s) {
        if (!at_sym(s))
            throw ParseError("expected '" + s + "'", lineno, peek().col);
        ++pos;
    }
    long long expect_int() {
        bool neg = false;
        if (at_sym("-")) {
            neg = true;
            ++pos;
        }
        if (peek().kind != Token::Number)
            throw ParseError("expected an integer", lineno, peek().col);
        long long v = std::stoll(next().text);
        return neg ? -v : v;
    }
    std::string expect_ident() {
        if (peek().kind != Token::Ident)
            throw ParseError("expected a name", lineno, peek().col);
        return next().text;
    }
};

struct Builder {
    Alphabet generators;
    std::optional<PiSet> pi;
    std::optional<Tower> tower;  // created on first use of letters
    std::vector<std::string> vars;
    std::vector<Equation> equations;
    std::vector<int> inequations;
    bool used = false;  // a root or word line has consumed the declarations

    const Tower& need_tower(int lineno, int col) {
        if (!tower) {
            if (!pi)
                throw ParseError("pi must be declared before words or roots",
                                 lineno, col);
            tower.emplace(generators, *pi);
        }
        used = true;
        return *tower;
    }

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return static_cast<int>(i);
        return -1;
    }
};

void invert_atoms(Equation& atoms) {
    std::reverse(atoms.begin(), atoms.end());
    for (EqAtom& a : atoms) {
        if (a.is_var)
            a.power = -a.power;
        else
            a.exp = -a.exp;
    }
}

PiRational parse_exp_tokens(LineParser& p) {
    if (p.at_sym("(")) {
        p.next();
        long long num = p.expect_int();
        p.expect_sym("/");
        long long den = p.expect_int();
        p.expect_sym(")");
        return PiRational(num, den);
    }
    return PiRational(p.expect_int(), 1);
}

Equation parse_word_atoms(LineParser& p, Builder& b, bool allow_vars);

Equation parse_factor(LineParser& p, Builder& b, bool allow_vars) {
    if (p.peek().kind == Token::Number && p.peek().text == "1") {
        p.next();  // the identity word
        return {};
    }
    if (p.at_sym("[")) {
        p.next();
        Equation w1 = parse_word_atoms(p, b, allow_vars);
        p.expect_sym(",");
        Equation w2 = parse_word_atoms(p, b, allow_vars);
        p.expect_sym("]");
        Equation out, t;
        t = w1;
        invert_atoms(t);
        out.insert(out.end(), t.begin(), t.end());
        t = w2;
        invert_atoms(t);
        out.insert(out.end(), t.begin(), t.end());
        out.insert(out.end(), w1.begin(), w1.end());
        out.insert(out.end(), w2.begin(), w2.end());
        return out;
    }
    if (p.at_sym("(")) {
        p.next();
        Equation inner = parse_word_atoms(p, b, allow_vars);
        p.expect_sym(")");
        if (p.at_sym("^")) {
            int col = p.peek().col;
            p.next();
            PiRational e = parse_exp_tokens(p);
            if (!e.is_integer()) {
                // a fractional power applies to a single concrete factor
                if (inner.size() != 1 || inner[0].is_var ||
                    !inner[0].exp.is_integer())
                    throw ParseError(
                        "fractional exponent needs a concrete base", p.lineno,
                        col);
                if (b.pi && !in_qpi(e, *b.pi))
                    throw PiViolationError(
                        "exponent denominator has a prime outside pi");
                Word base = fpow(inner[0].base,
                                 inner[0].exp.num.convert_to<long long>());
                return {EqAtom::coefficient(base, e)};
            }
            long long n = e.num.convert_to<long long>();
            Equation out;
            Equation rep = inner;
            if (n < 0) {
                invert_atoms(rep);
                n = -n;
            }
            for (long long k = 0; k < n; ++k)
                out.insert(out.end(), rep.begin(), rep.end());
            return out;
        }
        return inner;
    }
    int col = p.peek().col;
    std::string name = p.expect_ident();
    PiRational e(1, 1);
    if (p.at_sym("^")) {
        p.next();
        e = parse_exp_tokens(p);
    }
    int v = b.var_index(name);
    if (v >= 0) {
        if (!allow_vars)
            throw ParseError("variable '" + name + "' not allowed here",
                             p.lineno, col);
        if (!e.is_integer())
            throw ParseError("fractional exponent on a variable", p.lineno,
                             col);
        return {EqAtom::variable(v, e.num.convert_to<long long>())};
    }
    const Tower& tw = b.need_tower(p.lineno, col);
    auto gi = tw.alphabet().try_index_of(name);
    if (!gi)
        throw ParseError("undeclared symbol '" + name + "'", p.lineno, col);
    if (!e.is_integer() && b.pi && !in_qpi(e, *b.pi))
        throw PiViolationError("exponent denominator has a prime outside pi");
    return {EqAtom::coefficient(Word{Letter{*gi, 1}}, e)};
}

Equation parse_word_atoms(LineParser& p, Builder& b, bool allow_vars) {
    Equation out = parse_factor(p, b, allow_vars);
    while (p.at_sym("*")) {
        p.next();
        Equation f = parse_factor(p, b, allow_vars);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

// flatten concrete atoms (integer exponents) into a raw word
Word atoms_to_word(const Equation& atoms, int lineno) {
    Word out;
    for (const EqAtom& a : atoms) {
        if (a.is_var || !a.exp.is_integer())
            throw ParseError("root base must be a concrete integer-power word",
                             lineno, 1);
        Word part = fpow(a.base, a.exp.num.convert_to<long long>());
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace

EquationSystem parse_system(const std::string& text) {
    Builder b;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<Token> toks = lex_line(line, lineno);
        LineParser p{toks, 0, lineno};
        if (p.peek().kind == Token::End) continue;

        if (p.peek().kind == Token::Ident && p.peek().text == "generators" &&
            toks.size() > 2 && toks[1].kind == Token::Ident) {
            p.next();
            if (b.used)
                throw ParseError("generators must precede words and roots",
                                 lineno, p.peek().col);
            while (p.peek().kind == Token::Ident) {
                std::string g = p.expect_ident();
                if (b.generators.try_index_of(g))
                    throw ParseError("duplicate generator '" + g + "'", lineno,
                                     p.peek().col);
                b.generators.add(g);
            }
            if (p.peek().kind != Token::End)
                throw ParseError("malformed generators line", lineno,
                                 p.peek().col);
            continue;
        }
        if (p.peek().kind == Token::Ident && p.peek().text == "pi" &&
            toks.size() > 2 && toks[1].kind == Token::Number) {
            p.next();
            if (b.used)
                throw ParseError("pi must precede words and roots", lineno,
                                 p.peek().col);
            std::vector<Int> primes;
            primes.push_back(p.expect_int());
            while (p.at_sym(",")) {
                p.next();
                primes.push_back(p.expect_int());
            }
            if (p.peek().kind != Token::End)
                throw ParseError("malformed pi line", lineno, p.peek().col);
            b.pi = PiSet(std::move(primes));
            continue;
        }
        if (p.peek().kind == Token::Ident && p.peek().text == "vars" &&
            toks.size() > 2 && toks[1].kind == Token::Ident &&
            !(toks[1].kind == Token::Sym)) {
            // not a word line: "vars" followed by names and nothing else
            bool plain = true;
            for (std::size_t k = 1; k + 1 < toks.size(); ++k)
                if (toks[k].kind != Token::Ident) plain = false;
            if (plain) {
                p.next();
                while (p.peek().kind == Token::Ident) {
                    std::string v = p.expect_ident();
                    if (b.var_index(v) >= 0 || b.generators.try_index_of(v))
                        throw ParseError("name '" + v + "' already in use",
                                         lineno, p.peek().col);
                    b.vars.push_back(v);
                }
                continue;
            }
        }
        if (p.peek().kind == Token::Ident && p.peek().text == "root" &&
            toks.size() > 2 && toks[1].kind == Token::Ident) {
            p.next();
            std::string name = p.expect_ident();
            p.expect_sym("=");
            p.expect_sym("(");
            Equation base_atoms = parse_word_atoms(p, b, false);
            p.expect_sym(")");
            p.expect_sym("^");
            p.expect_sym("(");
            long long one = p.expect_int();
            if (one != 1)
                throw ParseError("root exponent must be 1/s", lineno,
                                 p.peek().col);
            p.expect_sym("/");
            long long s = p.expect_int();
            p.expect_sym(")");
            Word base = atoms_to_word(base_atoms, lineno);
            b.need_tower(lineno, 1);
            Tower ext = b.tower->adjoin_root(base, s);
            std::string assigned =
                ext.alphabet().name_of(ext.adjunction(ext.rank()).letter);
            if (assigned != name)
                throw ParseError("root must be named '" + assigned + "'",
                                 lineno, toks[1].col);
            b.tower = std::move(ext);
            continue;
        }
        // inequation: IDENT != 1
        if (toks.size() >= 3 && toks[0].kind == Token::Ident &&
            toks[1].kind == Token::Sym && toks[1].text == "!=") {
            int v = b.var_index(toks[0].text);
            if (v < 0)
                throw ParseError("undeclared variable '" + toks[0].text + "'",
                                 lineno, toks[0].col);
            p.pos = 2;
            if (p.expect_int() != 1 || p.peek().kind != Token::End)
                throw ParseError("inequations have the form x != 1", lineno,
                                 p.peek().col);
            b.inequations.push_back(v);
            continue;
        }
        // equation: word = 1
        Equation eq = parse_word_atoms(p, b, true);
        p.expect_sym("=");
        if (p.expect_int() != 1 || p.peek().kind != Token::End)
            throw ParseError("equations have the form w = 1", lineno,
                             p.peek().col);
        b.need_tower(lineno, 1);
        b.equations.push_back(std::move(eq));
    }

    if (!b.tower) {
        if (!b.pi) b.pi = PiSet();
        b.tower.emplace(b.generators, *b.pi);
    }
    EquationSystem sys;
    sys.tower = std::make_shared<const Tower>(std::move(*b.tower));
    sys.variables = std::move(b.vars);
    sys.equations = std::move(b.equations);
    sys.inequations = std::move(b.inequations);
    return sys;
}

Word parse_tower_word(const Tower& tw, const std::string& text) {
    Builder b;
    b.generators = tw.alphabet();  // resolves every tower letter by name
    b.pi = tw.pi();
    b.tower = tw;
    std::vector<Token> toks = lex_line(text, 1);
    LineParser p{toks, 0, 1};
    Equation atoms = parse_word_atoms(p, b, false);
    if (p.peek().kind != Token::End)
        throw ParseError("trailing input after word", 1, p.peek().col);
    return atoms_to_word(atoms, 1);
}

PiRational parse_exponent(const std::string& text) {
    std::vector<Token> toks = lex_line(text, 1);
    LineParser p{toks, 0, 1};
    PiRational e = parse_exp_tokens(p);
    if (p.peek().kind != Token::End)
        throw ParseError("trailing input after exponent", 1, p.peek().col);
    return e;
}

} // namespace qpi
