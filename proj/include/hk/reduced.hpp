#ifndef HK_REDUCED_HPP
#define HK_REDUCED_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hk/monomial.hpp"
#include "hk/mutation.hpp"
#include "hk/sparse.hpp"
#include "hk/walks.hpp"

namespace hk {

/// Row families of the reduced system, in the notation
/// A([-3]/[1])^m ([-3]/[2])^x and A([-2]/[1])^m ([-2]/[3])^y.
enum class RowFamily { CaseIIISingle, F31Low, F31High, F21Low, F21High };

struct RowIndex {
    RowFamily family;
    std::int64_t m = 0;
    std::int64_t x = 0; ///< x (31 families) or y (21 families); low rows have x = 1
    MutantDescriptor desc;
};

enum class ColFamily {
    Col31,    ///< A[-3]^{a+b}/([1]^a[2]^b)
    Col21,    ///< A[-2]^{a+b}/([1]^a[3]^b), a >= 1
    ColMixed, ///< A[-2]^a[-3]^b/[1]^{a+b}
};

struct ColIndex {
    ColFamily family;
    std::int64_t a = 0;
    std::int64_t b = 0;
    MutantDescriptor desc;
};

/// The two ratio-walk thresholds; absent means the walk never exits the
/// box cleanly and the low regime extends past any truncation.
struct MContext {
    std::optional<std::int64_t> m31;
    std::optional<std::int64_t> m21;
    std::uint64_t p = 2;
};

/// Least M with A[(-3)/(1)]^M convergent and A[(-3)/(1)]^{M-1}(-3)
/// nonnegative (which = 31), or the [-2]/[1] analogue (which = 21).
std::optional<std::int64_t> compute_M_ratio(const Monomial& a, const Trinomial& f, int which,
                                            std::uint64_t q);

MContext m_context(const Monomial& a, const Trinomial& f, std::uint64_t q);

/// The case-formula entry of the reduced matrix, reduced mod p.
std::uint32_t entry_of(const RowIndex& row, const ColIndex& col, const MContext& ctx);

/// Rows of the five families up to m <= bound, decreasing order. High
/// families carry x in the mutator range [a_m, b_m] derived by direct
/// walk simulation; low families run over their M-windows.
std::vector<RowIndex> enumerate_rows(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                     const MContext& ctx, std::int64_t bound);

/// Columns: the three grids with a+b <= bound whose values are convergent.
std::vector<ColIndex> enumerate_cols(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                     std::int64_t bound);

struct ReducedSystem {
    SparseFpMatrix matrix;
    std::vector<RowIndex> rows; ///< decreasing order; rows with convergent values dropped
    std::vector<ColIndex> cols; ///< increasing order
    std::optional<std::size_t> e_row; ///< the A[-2]/[1] row; carries e_A = 1
    MContext ctx;
    std::int64_t bound = 0;
};

ReducedSystem build_reduced_system(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                   std::int64_t bound);

/// Consistency of the truncated system at its own bound: the row groups
/// (the single + low-31 group, each high-31 level, the low-21 group, each
/// high-21 level) are tested by plain-vs-augmented rank; only the group
/// holding the e_A row can fail.
bool system_consistent(const ReducedSystem& sys, const PrimeField& field);

enum class Solvability { Solvable, Unsolvable, Unstable };
const char* solvability_name(Solvability s);

/// Verdict at `bound`, re-checked at `bound + delta`; a flip is Unstable.
Solvability decide_solvability(const Monomial& a, const Trinomial& f, std::uint64_t q,
                               std::int64_t bound, std::int64_t delta = 2);

/// Grouping key: the walk thresholds plus every validity interval the
/// truncated system depends on. Equal keys produce structurally identical
/// systems (same rows, columns and entries).
struct ClassKey {
    std::optional<std::int64_t> m31, m21;
    IntInterval low31_valid, low21_valid;       ///< value-valid m ranges of the low rows
    std::vector<IntInterval> high31, high21;    ///< mutator x-range per m = 0..bound
    std::vector<IntInterval> rowval31, rowval21;///< value-valid x-range per m = 0..bound
    std::vector<IntInterval> colbox31, colbox21, colboxmix; ///< in-box b-range per a = 0..bound

    std::vector<std::int64_t> flatten() const;
    bool operator==(const ClassKey& o) const { return flatten() == o.flatten(); }
};

ClassKey class_key(const Monomial& a, const Trinomial& f, std::uint64_t q, std::int64_t bound);

struct ClassInfo {
    ClassKey key;
    Monomial representative;
    std::uint64_t size = 0;
    Solvability verdict = Solvability::Unstable;
    std::vector<bool> unsolvable_at; ///< verdict per truncation t = 1..bound
};

struct ClassTable {
    std::vector<ClassInfo> classes;
    std::uint64_t box_size = 0;
    std::int64_t bound = 0;
    std::uint64_t in_via_i = 0;
    std::uint64_t in_via_ii = 0;
    std::uint64_t no_divisor = 0; ///< neither [2] nor [3] divides: definite non-members
    std::uint64_t route_iii = 0;
    std::uint64_t solvable = 0, unsolvable = 0, unstable = 0; ///< route-iii monomial totals
};

/// Groups the box monomials on the condition-(iii) route by class key and
/// decides each class's system once. Throws budget_error past the budget.
ClassTable count_unsolvable(const Trinomial& f, int n, std::int64_t bound,
                            std::uint64_t budget = kDefaultBudget);

} // namespace hk

#endif
