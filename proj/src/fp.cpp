#include "hk/fp.hpp"

namespace hk {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint64_t base = a % p_, r = 1;
    while (e) {
        if (e & 1) r = (r * base) % p_;
        base = (base * base) % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero");
    return pow(a, p_ - 2);
}

namespace {

// C(n, k) mod p for 0 <= k <= n < p, multiplicative formula.
std::uint32_t small_binom(std::uint64_t n, std::uint64_t k, const PrimeField& field) {
    if (k > n - k) k = n - k;
    std::uint32_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        num = field.mul(num, field.reduce(static_cast<std::int64_t>((n - i) % field.p())));
        den = field.mul(den, field.reduce(static_cast<std::int64_t>((i + 1) % field.p())));
    }
    return field.mul(num, field.inv(den));
}

} // namespace

std::uint32_t binom_mod_p(std::uint64_t n, std::int64_t k, const PrimeField& field) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t kk = static_cast<std::uint64_t>(k);
    std::uint32_t result = 1;
    const std::uint64_t p = field.p();
    while (n > 0 || kk > 0) {
        std::uint64_t nd = n % p, kd = kk % p;
        if (kd > nd) return 0;
        result = field.mul(result, small_binom(nd, kd, field));
        n /= p;
        kk /= p;
    }
    return result;
}

} // namespace hk
