#include "qpi/pi_arith.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace qpi {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PiSet::PiSet(std::vector<Int> primes) : primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (const Int& p : primes_)
        if (!is_prime(p))
            throw MalformedRationalError("pi set member " + p.str() + " is not prime");
}

bool PiSet::contains(const Int& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

PiRational::PiRational(Int n, Int d) {
    if (d == 0) throw MalformedRationalError("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    Int g = boost::multiprecision::gcd(n < 0 ? Int(-n) : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

bool in_qpi(const PiRational& q, const PiSet& pi) {
    if (q.den == 0) throw MalformedRationalError("zero denominator");
    return in_zpi(q.den, pi);
}

bool in_zpi(const Int& m, const PiSet& pi) {
    if (m < 1) return false;
    Int r = m;
    for (const Int& p : pi.primes())
        while (r % p == 0) r /= p;
    return r == 1;
}

Int zpi_nth(const PiSet& pi, std::size_t n) {
    // heap enumeration of the monoid generated by pi, starting at 1
    std::priority_queue<Int, std::vector<Int>, std::greater<Int>> heap;
    std::set<Int> seen;
    heap.push(1);
    seen.insert(1);
    Int cur = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (heap.empty())
            throw Error("Z_pi for empty pi has only one element");
        cur = heap.top();
        heap.pop();
        for (const Int& p : pi.primes()) {
            Int next = cur * p;
            if (seen.insert(next).second) heap.push(next);
        }
    }
    return cur;
}

} // namespace qpi
