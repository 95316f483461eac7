#include "bitswap/theory_exact.hpp"

#include "bitswap/errors.hpp"

namespace bitswap::theory {

namespace {

using boost::multiprecision::cpp_int;

Rational power(const Rational& base, int exponent) {
    Rational out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

Rational frac(long long num, long long den) { return Rational(cpp_int(num), cpp_int(den)); }

// (alpha (alpha + 2(mu - alpha)))^2, the numerator of the pair selection probability.
Rational pair_weight(int alpha, int mu) {
    const Rational inner = Rational(alpha) * Rational(alpha + 2 * (mu - alpha));
    return inner * inner;
}

// mu^(2 lambda + 1) / (mu^(2 lambda + 1) - sum_alpha (mu^4 - pair_weight * swap)^(lambda/2))
Rational pair_level(int mu, int lambda, const Rational& swap) {
    const Rational scale = power(Rational(mu), 2 * lambda + 1);
    const Rational mu4 = power(Rational(mu), 4);
    Rational failures = 0;
    for (int alpha = 1; alpha <= mu; ++alpha) {
        failures += power(mu4 - pair_weight(alpha, mu) * swap, lambda / 2);
    }
    return scale / (scale - failures);
}

Rational onemax_1bs(const TheoryQuery& q) {
    Rational total = 0;
    for (int k = 0; k <= q.n / 2 - 1; ++k) {
        const Rational swap = frac(1, 2) - 2 * frac(static_cast<long long>(k) * k, static_cast<long long>(q.n) * q.n);
        total += pair_level(q.mu, q.lambda, swap);
    }
    return total;
}

Rational onemax_rls(const TheoryQuery& q) {
    const Rational scale = power(Rational(q.mu), 2 * q.lambda + 1);
    const Rational mu2 = Rational(q.mu) * q.mu;
    Rational total = 0;
    for (int k = q.n / 2; k <= q.n - 1; ++k) {
        const Rational flip = 1 - frac(k, q.n);
        Rational failures = 0;
        for (int alpha = 1; alpha <= q.mu; ++alpha) {
            failures += power(mu2 - Rational(alpha) * Rational(2 * q.mu - alpha) * flip, q.lambda);
        }
        total += scale / (scale - failures);
    }
    return total;
}

Rational rr_1bs(const TheoryQuery& q) {
    const long long n = q.n;
    const long long m = q.block_length;
    Rational total = 0;
    for (long long k = 0; k <= q.blocks - 1; ++k) {
        for (long long l = 0; l <= m / 2 - 1; ++l) {
            const Rational swap = frac((m - 2 * l) * (n + k * m + 2 * l), 2 * n * n);
            total += pair_level(q.mu, q.lambda, swap);
        }
    }
    return total;
}

// K * sum_l mu^(2 lambda) / (mu^(2 lambda) - (c/e) sum_alpha (1/alpha!) [mu^2 - alpha(2mu - alpha) r_l]^lambda)
// with c(mu)/e = 1 / sum_{alpha=1}^{mu} 1/alpha!, which is rational.
Rational rr_rls_poisson(const TheoryQuery& q) {
    const long long n = q.n;
    const long long m = q.block_length;
    const long long rate_den = q.rr_flip == RrFlipVariant::FullRate ? n : 2 * n;

    std::vector<Rational> inv_factorial;
    Rational term = 1;
    Rational truncated_mass = 0;
    for (int alpha = 1; alpha <= q.mu; ++alpha) {
        term /= alpha;
        inv_factorial.push_back(term);
        truncated_mass += term;
    }
    const Rational c_over_e = 1 / truncated_mass;

    const Rational scale = power(Rational(q.mu), 2 * q.lambda);
    const Rational mu2 = Rational(q.mu) * q.mu;
    Rational block = 0;
    for (long long l = 0; l <= m / 2 - 1; ++l) {
        const Rational rate = frac(m - 2 * l, rate_den);
        Rational failures = 0;
        for (int alpha = 1; alpha <= q.mu; ++alpha) {
            failures += inv_factorial[static_cast<std::size_t>(alpha - 1)] *
                        power(mu2 - Rational(alpha) * Rational(2 * q.mu - alpha) * rate, q.lambda);
        }
        block += scale / (scale - c_over_e * failures);
    }
    return Rational(q.blocks) * block;
}

} // namespace

Rational eta_exact_rational(const TheoryQuery& q) {
    if (q.mu > kExactMaxMu || q.lambda > kExactMaxLambda || q.n > kExactMaxN) {
        throw GuardExceeded("exact oracle limited to mu <= 6, lambda <= 6, n <= 64");
    }
    validate(q);
    if (q.algorithm == TheoryAlgorithm::BitSwap1) {
        return q.royal_roads ? rr_1bs(q) : onemax_1bs(q);
    }
    return q.royal_roads ? rr_rls_poisson(q) : onemax_rls(q);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace bitswap::theory
