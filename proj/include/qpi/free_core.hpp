#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpi/errors.hpp"

namespace qpi {

struct Letter {
    int gen;   // index into the alphabet
    int sign;  // +1 or -1

    Letter inv() const { return {gen, -sign}; }
    auto operator<=>(const Letter&) const = default;
    // shortlex letter order: generators in declaration order, the positive
    // letter of each generator ranks before its inverse
    int key() const { return 2 * gen + (sign < 0 ? 1 : 0); }
};

using Word = std::vector<Letter>;

class Alphabet {
public:
    Alphabet() = default;

    int add(const std::string& name);
    int index_of(const std::string& name) const;           // throws AlphabetError
    std::optional<int> try_index_of(const std::string& name) const;
    const std::string& name_of(int gen) const;
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
};

bool shortlex_less(const Word& a, const Word& b);

Word reduce(const Word& raw);
Word inverse(const Word& w);
Word fmul(const Word& a, const Word& b);          // reduce(a ++ b)
Word fpow(const Word& w, long long e);
Word conjugate(const Word& c, const Word& w);     // reduce(c^-1 w c)

struct CyclicReduction {
    Word core;        // shortlex-least rotation of the cyclically reduced form
    Word conjugator;  // w = conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);

struct RootPower {
    Word root;          // primitive
    long long exponent; // >= 1, w = root^exponent
};
RootPower root_extract(const Word& w);  // throws IdentityRootError on empty

// shortlex-least c with c^-1 w1 c = w2, if conjugate
std::optional<Word> is_conjugate(const Word& w1, const Word& w2);

// true iff w only uses generators from the subset (free factor membership for
// basis subsets)
bool free_factor_member(const Word& w, const std::vector<int>& subset);

// parsing/printing of plain free words: "a*b^-1*a^3", used by tests and cli
Word parse_word(const Alphabet& ab, const std::string& text);
std::string print_word(const Alphabet& ab, const Word& w);  // identity prints "1"

} // namespace qpi
