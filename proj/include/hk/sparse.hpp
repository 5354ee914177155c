#ifndef HK_SPARSE_HPP
#define HK_SPARSE_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hk/fp.hpp"

namespace hk {

/// Coordinate-format sparse matrix over F_p. No duplicate (row, col)
/// pairs, all stored values nonzero.
struct SparseFpMatrix {
    std::uint64_t nrows = 0;
    std::uint64_t ncols = 0;
    struct Entry {
        std::uint64_t row;
        std::uint64_t col;
        std::uint32_t value;
    };
    std::vector<Entry> entries;

    void add(std::uint64_t r, std::uint64_t c, std::uint32_t v) { entries.push_back({r, c, v}); }
    /// Throws std::invalid_argument on out-of-range indices, zero values
    /// or duplicate coordinates.
    void validate(const PrimeField& field) const;
};

/// Exact rank over F_p. The matrix is split into connected components of
/// the bipartite row/column graph; each component is eliminated with a
/// bit-packed backend (p = 2, moderate width) or a generic sparse
/// echelon with short-rows-first pivoting.
std::uint64_t rank_fp(const SparseFpMatrix& m, const PrimeField& field);

/// One sparse row: (column, value) pairs sorted by ascending column.
using SparseRow = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

/// Online row echelon over F_p, pivoting on the largest column index of
/// each reduced row. Feed rows one at a time; pivot columns accumulate.
class SparseEchelon {
public:
    explicit SparseEchelon(const PrimeField& field) : field_(field) {}

    /// Reduces `row` against the current pivots; if a nonzero remainder
    /// survives it becomes a new pivot and the call returns true.
    bool insert(SparseRow row);

    std::uint64_t rank() const { return pivots_.size(); }
    const std::unordered_map<std::uint64_t, SparseRow>& pivots() const { return pivots_; }

private:
    PrimeField field_;
    std::unordered_map<std::uint64_t, SparseRow> pivots_; // lead col -> normalized row
};

/// Online row echelon over F_2 with rows packed into 64-bit words.
class PackedEchelon {
public:
    explicit PackedEchelon(std::uint64_t width);

    bool insert(const std::vector<std::uint64_t>& cols);

    std::uint64_t rank() const { return pivots_.size(); }
    const std::unordered_map<std::uint64_t, std::vector<std::uint64_t>>& pivots() const {
        return pivots_;
    }

private:
    std::uint64_t words_;
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> pivots_; // lead -> bits
};

} // namespace hk

#endif
