#ifndef HK_MONOMIAL_HPP
#define HK_MONOMIAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hk/fp.hpp"

namespace hk {

using Exponents = std::vector<std::int64_t>;

/// A monomial in x0..x{m-1}: a vector of m nonnegative exponents.
struct Monomial {
    Exponents e;

    Monomial() = default;
    explicit Monomial(Exponents exps);

    std::size_t vars() const { return e.size(); }
    std::int64_t degree() const;
    bool is_constant() const { return degree() == 0; }
    bool divides(const Monomial& other) const;

    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// A Laurent monomial: integer exponents, negatives allowed.
struct LaurentMonomial {
    Exponents e;

    LaurentMonomial() = default;
    explicit LaurentMonomial(Exponents exps) : e(std::move(exps)) {}

    std::size_t vars() const { return e.size(); }
    bool nonnegative() const;

    bool operator==(const LaurentMonomial& o) const { return e == o.e; }
};

enum class Ordering { Less, Equal, Greater };

/// Degree-lexicographic comparison with x0 smallest, x{m-1} largest:
/// total degree decides first, ties go to the monomial with more of a
/// larger variable. Throws std::invalid_argument on dimension mismatch.
Ordering deglex_compare(const Monomial& a, const Monomial& b);

inline bool deglex_less(const Monomial& a, const Monomial& b) {
    return deglex_compare(a, b) == Ordering::Less;
}

/// One term of a polynomial: a nonzero coefficient and a monomial.
struct Term {
    std::uint32_t coeff = 1; // nonzero residue mod p
    Monomial mon;
};

/// A three-term polynomial over F_p with its terms sorted so that
/// mon(t1) < mon(t2) < mon(t3) in deglex. t3 is the initial term.
class Trinomial {
public:
    Trinomial(PrimeField field, Term a, Term b, Term c);

    const PrimeField& field() const { return field_; }
    std::size_t vars() const { return m_; }

    /// Terms by the 1-based position used throughout: 1 = least initial.
    const Term& term(int i) const;
    const Monomial& mon(int i) const { return term(i).mon; }
    std::uint32_t coeff(int i) const { return term(i).coeff; }

    std::int64_t max_degree() const;
    std::string to_string() const;

private:
    PrimeField field_;
    std::size_t m_;
    Term t1_, t2_, t3_;
};

/// Parses the artifact's polynomial grammar: `term (+ term)*`,
/// term = `[int*] [x<idx>[^int]]*`, whitespace insignificant.
/// Exactly three distinct non-constant terms must survive reduction mod p.
Trinomial parse_trinomial(const std::string& text, std::uint64_t p);

std::string monomial_to_string(const Monomial& m);
std::string laurent_to_string(const LaurentMonomial& m);

/// The E/N/Z/P split of the variables appearing in f. `extra` holds the
/// variables occurring only in the initial term, sorted by descending
/// degree in f; the other three classes are decided by the sign of
/// deg_[2](v) - deg_[1](v). `order` is the canonical arrangement
/// E..N..Z..P as variable indices (a permutation of the support of f).
struct VariableClassification {
    std::vector<std::size_t> extra;
    std::vector<std::size_t> negative;
    std::vector<std::size_t> zero;
    std::vector<std::size_t> positive;
    std::vector<std::size_t> order;
};

VariableClassification classify_variables(const Trinomial& f);

/// Exponent vector of A * mon(1)^i * mon(2)^j * mon(3)^k.
LaurentMonomial laurent_apply(const Monomial& a, const Trinomial& f,
                              std::int64_t i, std::int64_t j, std::int64_t k);

} // namespace hk

#endif
