#include "qpi/free_core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace qpi {

int Alphabet::add(const std::string& name) {
    if (try_index_of(name))
        throw AlphabetError("duplicate generator: " + name);
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
}

int Alphabet::index_of(const std::string& name) const {
    auto i = try_index_of(name);
    if (!i) throw AlphabetError("unknown symbol: " + name);
    return *i;
}

std::optional<int> Alphabet::try_index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

const std::string& Alphabet::name_of(int gen) const {
    if (gen < 0 || gen >= size()) throw AlphabetError("generator index out of range");
    return names_[static_cast<std::size_t>(gen)];
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
    }
    return false;
}

Word reduce(const Word& raw) {
    Word out;
    out.reserve(raw.size());
    for (const Letter& l : raw) {
        if (l.sign != 1 && l.sign != -1)
            throw AlphabetError("letter sign must be +1 or -1");
        if (!out.empty() && out.back() == l.inv())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inv());
    return out;
}

Word fmul(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return reduce(out);
}

Word fpow(const Word& w, long long e) {
    Word base = e < 0 ? inverse(w) : w;
    long long n = e < 0 ? -e : e;
    Word out;
    for (long long i = 0; i < n; ++i) out = fmul(out, base);
    return out;
}

Word conjugate(const Word& c, const Word& w) {
    return fmul(fmul(inverse(c), w), c);
}

CyclicReduction cyclic_reduce(const Word& w0) {
    Word w = reduce(w0);
    Word conj;
    while (w.size() >= 2 && w.front() == w.back().inv()) {
        conj.push_back(w.front());
        w.erase(w.begin());
        w.pop_back();
    }
    // pick the shortlex-least rotation; rotating v = p.q to q.p conjugates by p
    std::size_t best = 0;
    Word bestw = w;
    for (std::size_t off = 1; off < w.size(); ++off) {
        Word rot(w.begin() + static_cast<long>(off), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(off));
        if (shortlex_less(rot, bestw)) {
            bestw = rot;
            best = off;
        }
    }
    Word p(w.begin(), w.begin() + static_cast<long>(best));
    return {bestw, fmul(conj, p)};
}

RootPower root_extract(const Word& w0) {
    Word w = reduce(w0);
    if (w.empty()) throw IdentityRootError("identity has no primitive root");
    CyclicReduction cr = cyclic_reduce(w);
    const Word& v = cr.core;
    std::size_t n = v.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = v[i] == v[i - d];
        if (periodic) {
            Word r0(v.begin(), v.begin() + static_cast<long>(d));
            Word root = fmul(fmul(cr.conjugator, r0), inverse(cr.conjugator));
            return {root, static_cast<long long>(n / d)};
        }
    }
    return {w, 1};  // unreachable: d = n always periodic
}

std::optional<Word> is_conjugate(const Word& w1r, const Word& w2r) {
    Word w1 = reduce(w1r), w2 = reduce(w2r);
    if (w1.empty() || w2.empty()) {
        if (w1.empty() && w2.empty()) return Word{};
        return std::nullopt;
    }
    CyclicReduction c1 = cyclic_reduce(w1);
    CyclicReduction c2 = cyclic_reduce(w2);
    if (c1.core != c2.core) return std::nullopt;
    Word c0 = fmul(c1.conjugator, inverse(c2.conjugator));
    // all conjugators are r^k * c0 for the primitive root r of w1
    Word r = root_extract(w1).root;
    long long span = 2 + 2 * static_cast<long long>(c0.size()) /
                             std::max<std::size_t>(r.size(), 1);
    Word best = c0;
    for (long long k = -span; k <= span; ++k) {
        Word cand = fmul(fpow(r, k), c0);
        if (shortlex_less(cand, best)) best = cand;
    }
    return best;
}

bool free_factor_member(const Word& w, const std::vector<int>& subset) {
    for (const Letter& l : reduce(w))
        if (std::find(subset.begin(), subset.end(), l.gen) == subset.end())
            return false;
    return true;
}

namespace {

struct WordParser {
    const Alphabet& ab;
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, 1, static_cast<int>(pos) + 1);
    }

    long long parse_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (s[start] == '-' && pos == start + 1)) fail("expected integer");
        return std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10);
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier");
        return s.substr(start, pos - start);
    }

    Word parse_factor() {
        skip_ws();
        Word base;
        if (eat('[')) {
            Word x = parse_word();
            if (!eat(',')) fail("expected ',' in commutator");
            Word y = parse_word();
            if (!eat(']')) fail("expected ']'");
            base = fmul(fmul(inverse(x), inverse(y)), fmul(x, y));
        } else {
            std::string name = parse_ident();
            if (name == "1") return {};
            base = {Letter{ab.index_of(name), 1}};
        }
        if (eat('^')) {
            long long e;
            if (eat('(')) {
                e = parse_int();
                if (eat('/')) fail("fractional exponent not allowed here");
                if (!eat(')')) fail("expected ')'");
            } else {
                e = parse_int();
            }
            return fpow(base, e);
        }
        return base;
    }

    Word parse_word() {
        Word out = parse_factor();
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                out = fmul(out, parse_factor());
            } else {
                break;
            }
        }
        return out;
    }
};

} // namespace

Word parse_word(const Alphabet& ab, const std::string& text) {
    WordParser p{ab, text};
    Word w = p.parse_word();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return reduce(w);
}

std::string print_word(const Alphabet& ab, const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long long run = static_cast<long long>(j - i) * w[i].sign;
        if (!out.empty()) out += '*';
        out += ab.name_of(w[i].gen);
        if (run != 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

} // namespace qpi
