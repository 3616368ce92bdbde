#pragma once

#include <memory>

#include "qpi/tower.hpp"

namespace qpi {

// Element of the Q_pi-completion: a tower handle plus a canonical word.
// Immutable; qexp may return an element over an extended tower.
struct QElement {
    std::shared_ptr<const Tower> tower;
    Word word;
};

QElement q_element(std::shared_ptr<const Tower> tw, const Word& raw);
QElement q_identity(std::shared_ptr<const Tower> tw);

QElement q_mul(const QElement& x, const QElement& y);
QElement q_inv(const QElement& x);
QElement q_pow(const QElement& x, long long e);
bool q_equal(const QElement& x, const QElement& y);
bool is_identity(const QElement& g);

// g^alpha, adjoining at most one root when the needed one is missing
QElement qexp(const QElement& g, const PiRational& alpha);

} // namespace qpi
