#pragma once

#include <string>

#include "qpi/eq_pipeline.hpp"

namespace qpi {

// Parse the line-oriented system format:
//   generators a b
//   pi 2, 3
//   root t1 = (a)^(1/2)
//   vars x y
//   x^2 * a^-1 = 1
//   x != 1
// Words are products of factors joined by *; a factor is a symbol with an
// optional integer or (p/q) exponent, a commutator [w1, w2], or a
// parenthesized word. Declarations must precede use; fractional exponents are
// validated against pi at parse time. Errors carry line and column.
EquationSystem parse_system(const std::string& text);

// parse a single word over the tower's alphabet (no variables)
Word parse_tower_word(const Tower& tw, const std::string& text);

// parse "p", "-p", "p/q" or "(p/q)" as a rational exponent
PiRational parse_exponent(const std::string& text);

} // namespace qpi
