#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "qpi/errors.hpp"

namespace qpi {

using Int = boost::multiprecision::cpp_int;

bool is_prime(const Int& n);

// Finite set of primes pi, kept sorted and duplicate-free.
class PiSet {
public:
    PiSet() = default;
    explicit PiSet(std::vector<Int> primes);

    const std::vector<Int>& primes() const { return primes_; }
    bool contains(const Int& p) const;
    bool empty() const { return primes_.empty(); }

    bool operator==(const PiSet&) const = default;

private:
    std::vector<Int> primes_;
};

// Rational in lowest terms with positive denominator. Membership in Q_pi is a
// separate query (in_qpi), not an invariant of the value itself.
struct PiRational {
    Int num;
    Int den;

    PiRational() : num(0), den(1) {}
    PiRational(Int n, Int d);

    bool is_integer() const { return den == 1; }

    friend PiRational operator+(const PiRational& a, const PiRational& b) {
        return PiRational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend PiRational operator*(const PiRational& a, const PiRational& b) {
        return PiRational(a.num * b.num, a.den * b.den);
    }
    friend PiRational operator-(const PiRational& a) { return PiRational(-a.num, a.den); }
    bool operator==(const PiRational&) const = default;
};

// True iff every prime factor of q's denominator lies in pi.
bool in_qpi(const PiRational& q, const PiSet& pi);

// True iff m >= 1 and every prime factor of m lies in pi (m is in the
// multiplicative monoid Z_pi, which contains 1).
bool in_zpi(const Int& m, const PiSet& pi);

// n-th smallest element of Z_pi, 1-based; zpi_nth(pi, 1) == 1.
Int zpi_nth(const PiSet& pi, std::size_t n);

} // namespace qpi
