#include "qpi/qgroup.hpp"

namespace qpi {

namespace {

// the deeper of two compatible towers
std::shared_ptr<const Tower> join(const QElement& x, const QElement& y) {
    if (x.tower->extends(*y.tower)) return x.tower;
    if (y.tower->extends(*x.tower)) return y.tower;
    throw LineageError("elements over incompatible tower lineages");
}

} // namespace

QElement q_element(std::shared_ptr<const Tower> tw, const Word& raw) {
    Word w = normal_form(*tw, raw);
    return {std::move(tw), std::move(w)};
}

QElement q_identity(std::shared_ptr<const Tower> tw) {
    return {std::move(tw), {}};
}

QElement q_mul(const QElement& x, const QElement& y) {
    auto tw = join(x, y);
    return {tw, tmul(*tw, x.word, y.word)};
}

QElement q_inv(const QElement& x) {
    return {x.tower, tinv(*x.tower, x.word)};
}

QElement q_pow(const QElement& x, long long e) {
    return {x.tower, tpow(*x.tower, x.word, e)};
}

bool q_equal(const QElement& x, const QElement& y) {
    join(x, y);  // lineage check
    return x.word == y.word;
}

bool is_identity(const QElement& g) {
    return g.word.empty();
}

QElement qexp(const QElement& g, const PiRational& alpha) {
    const Tower& tw = *g.tower;
    if (!in_qpi(alpha, tw.pi()))
        throw PiViolationError("exponent " + alpha.num.str() + "/" + alpha.den.str() +
                               " is not in Q_pi");
    if (g.word.empty() || alpha.num == 0) return q_identity(g.tower);
    if (alpha.is_integer()) {
        if (boost::multiprecision::abs(alpha.num) > 1000000)
            throw BudgetExceededError("exponent too large");
        return q_pow(g, static_cast<long long>(alpha.num));
    }

    TowerRoot r = root_extract_t(tw, g.word);  // g = conj core^m conj^-1
    Int e = Int(r.exponent) * alpha.num;       // g^alpha = conj core^(e/q) conj^-1
    Int q = alpha.den;
    Int gg = boost::multiprecision::gcd(boost::multiprecision::abs(e), q);
    Int qp = q / gg;  // denominator still missing from the tower
    if (boost::multiprecision::abs(e / gg) > 1000000)
        throw BudgetExceededError("exponent too large");

    if (qp == 1) {
        long long ee = static_cast<long long>(e / q);
        Word w = tmul(tw, tmul(tw, r.conjugator, tpow(tw, r.core, ee)),
                      tinv(tw, r.conjugator));
        return {g.tower, w};
    }

    // adjoin the qp-th root of the core: core = rotation t^qp rotation^-1, so
    // core^(e/q) = rotation t^(e/gg) rotation^-1
    TowerExtension ext = adjoin_root_ex(tw, r.core, static_cast<long long>(qp));
    auto nt = std::make_shared<const Tower>(std::move(ext.tower));
    long long ee = static_cast<long long>(e / gg);
    Word inner = tpow(*nt, Word{Letter{ext.letter, 1}}, ee);
    Word h = fmul(r.conjugator, ext.rotation);
    Word w = tmul(*nt, tmul(*nt, h, inner), tinv(*nt, h));
    return {nt, w};
}

} // namespace qpi
