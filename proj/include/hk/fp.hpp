#ifndef HK_FP_HPP
#define HK_FP_HPP

#include <cstdint>
#include <stdexcept>

namespace hk {

/// Arithmetic in the prime field F_p. Elements are canonical residues in [0, p).
class PrimeField {
public:
    /// Throws std::invalid_argument unless p is prime (trial division).
    explicit PrimeField(std::uint64_t p);

    std::uint64_t p() const { return p_; }

    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<std::uint32_t>(s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + p_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    /// Multiplicative inverse; throws std::domain_error for a == 0.
    std::uint32_t inv(std::uint32_t a) const;

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

/// C(n, k) mod p by Lucas' theorem. Returns 0 for k < 0 or k > n.
std::uint32_t binom_mod_p(std::uint64_t n, std::int64_t k, const PrimeField& field);

} // namespace hk

#endif
