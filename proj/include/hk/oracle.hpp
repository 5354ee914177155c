#ifndef HK_ORACLE_HPP
#define HK_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hk/monomial.hpp"
#include "hk/sparse.hpp"

namespace hk {

/// Default cap on the number of basis monomials a run may enumerate.
constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Thrown when a requested box exceeds the configured budget.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The monomial basis of S/(x0^q,...,x{m-1}^q), q = p^n, enumerated in
/// mixed radix base q with digit i the exponent of x_i (x_{m-1} is the
/// most significant digit).
class FrobeniusBox {
public:
    FrobeniusBox(std::size_t m, int n, const PrimeField& field);

    std::size_t vars() const { return m_; }
    int level() const { return n_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t size() const { return size_; }

    std::uint64_t index(const Monomial& mono) const;
    Monomial monomial(std::uint64_t idx) const;
    /// True iff every exponent lies in [0, q): the vector is a basis monomial.
    bool contains(const LaurentMonomial& v) const;

private:
    std::size_t m_;
    int n_;
    std::uint64_t q_;
    std::uint64_t size_;
};

struct HKPoint {
    int n;
    std::uint64_t q;
    std::uint64_t hk;
};

/// Exact values of the Hilbert-Kunz function of f at levels 1..n.
struct HKSeries {
    std::uint64_t p = 0;
    std::string poly;
    std::size_t m = 0;
    std::vector<HKPoint> points;
    bool truncated = false;
};

/// Matrix of g -> f*g on the box basis: the column of basis monomial u
/// has entry coeff(t) at row index(u * mon(t)) for each term t of f that
/// stays inside the box. At most 3 nonzeros per column.
SparseFpMatrix build_mult_matrix(const Trinomial& f, const FrobeniusBox& box);

/// dim_k S/((f) + (x^[q])) = q^m - rank(mult-by-f). Throws budget_error
/// when q^m exceeds `budget`.
std::uint64_t colength(const Trinomial& f, int n, std::uint64_t budget = kDefaultBudget);

/// colength at n = 1..n_max; stops early (truncated flag) at the budget.
HKSeries hk_series(const Trinomial& f, int n_max, std::uint64_t budget = kDefaultBudget);

/// Basis monomials that are never a pivot of the deglex-ordered
/// elimination of the row space {f*u : u in box}; pivots always sit on
/// the deglex-largest monomial of a reduced row. Sorted deglex ascending;
/// the count equals colength(f, n).
std::vector<Monomial> standard_monomials(const Trinomial& f, int n,
                                         std::uint64_t budget = kDefaultBudget);

} // namespace hk

#endif
