#ifndef HK_MUTATION_HPP
#define HK_MUTATION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hk/monomial.hpp"
#include "hk/oracle.hpp"
#include "hk/sparse.hpp"

namespace hk {

/// A rewrite state over a fixed base monomial A: integer exponents on the
/// three term symbols of f, with the Laurent value A*[1]^e1*[2]^e2*[3]^e3
/// cached. The exponents, not the value, identify a descriptor (distinct
/// descriptors may share their value when the terms of f are related).
struct MutantDescriptor {
    std::int64_t e1 = 0;
    std::int64_t e2 = 0;
    std::int64_t e3 = 0;
    LaurentMonomial value;

    /// Key for the total orders on mutant sets: lexicographic on
    /// (e3, e2, e1), ascending.
    std::array<std::int64_t, 3> order_key() const { return {e3, e2, e1}; }

    bool operator==(const MutantDescriptor& o) const {
        return e1 == o.e1 && e2 == o.e2 && e3 == o.e3;
    }
};

inline bool descriptor_less(const MutantDescriptor& a, const MutantDescriptor& b) {
    return a.order_key() < b.order_key();
}

/// True iff the vector lies outside the box: a negative exponent or one
/// that is >= q. Convergent states absorb no further rewriting.
bool is_convergent(const LaurentMonomial& v, std::uint64_t q);

/// Membership test for the set L: a descriptor is excluded exactly when
/// its positive part sits entirely on e3 (only [3]s in the denominator of
/// the lowest-terms form).
bool in_l_family(std::int64_t e1, std::int64_t e2, std::int64_t e3);

/// The truncated mutant index sets for (A, f) in the box of size q^m.
struct MutantSets {
    Monomial base;
    std::uint64_t q = 0;
    int depth = 0;
    std::vector<MutantDescriptor> b_set; ///< non-convergent mutants, <= depth rewrites
    std::vector<MutantDescriptor> a_set; ///< B[-t] for B in b_set, t | B
    std::vector<MutantDescriptor> e_set; ///< D[t] for D in a_set
    std::vector<MutantDescriptor> l_set; ///< e_set filtered by in_l_family
};

/// Breadth-first closure of the mod-f rewriting from A, truncated at
/// `depth` rewrite applications. Convergent states are dropped.
MutantSets generate_mutant_sets(const Monomial& a, const Trinomial& f, std::uint64_t q, int depth);

/// Which rows of the assembled system carry a forced right-hand side.
struct RhsPattern {
    std::vector<std::size_t> forced_zero_rows; ///< non-convergent rows other than A
    std::optional<std::size_t> a_row;          ///< row of the descriptor (0,0,0)
};

/// The formal linear system: column D carries coeff(t) at the row of
/// D[t] whenever that descriptor lies in l_set.
struct AssembledSystem {
    SparseFpMatrix matrix;
    std::vector<MutantDescriptor> col_index; ///< a_set, ascending order
    std::vector<MutantDescriptor> row_index; ///< l_set, descending order
    RhsPattern rhs;
};

AssembledSystem assemble_system(const Monomial& a, const Trinomial& f, const MutantSets& sets);

/// The split of the rows by their smallest nonzero column: a row lands in
/// r_set when a strictly smaller row shares its C_{1,B} column.
struct RowSplit {
    std::vector<MutantDescriptor> r_set;
    std::vector<MutantDescriptor> s_set;
    std::vector<MutantDescriptor> zero_rows; ///< rows with no nonzero entry (excluded)
};

RowSplit select_c1_and_split(const AssembledSystem& sys);

bool check_condition_i(const Monomial& a, const Trinomial& f);

/// Least M for the [-2]/[1] ratio walk of the membership theorem, present
/// only when [1] does not divide A, [2] does, extra variables exist, and
/// the walk exits the box cleanly.
std::optional<std::int64_t> check_condition_ii(const Monomial& a, const Trinomial& f, std::uint64_t q);

enum class Verdict { InViaI, InViaII, InViaIII, NotIn, Undetermined };

const char* verdict_name(Verdict v);

struct Membership {
    Verdict verdict = Verdict::Undetermined;
    std::optional<std::int64_t> witness_m; ///< the M of condition (ii)
    int depth = 0;
};

/// Applies the three membership conditions in order. Condition (iii) is
/// decided on the like-terms system at `depth` and `depth + 2` rewrites;
/// a flip between the two yields Undetermined.
Membership classify_monomial(const Monomial& a, const Trinomial& f, std::uint64_t q, int depth);

/// Solvability of the like-terms system of condition (iii) for the given
/// truncated sets: coefficients of all in-box monomials other than A must
/// vanish while A's coefficient is nonzero.
bool value_system_solvable(const Monomial& a, const Trinomial& f, const MutantSets& sets);

} // namespace hk

#endif
