#include "hk/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hk {

void SparseFpMatrix::validate(const PrimeField& field) const {
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for (const auto& e : entries) {
        if (e.row >= nrows || e.col >= ncols) throw std::invalid_argument("sparse entry out of range");
        if (e.value == 0 || e.value >= field.p()) throw std::invalid_argument("sparse entry value out of F_p*");
        if (!seen.emplace(e.row, e.col).second) throw std::invalid_argument("duplicate sparse entry");
    }
}

bool SparseEchelon::insert(SparseRow row) {
    std::sort(row.begin(), row.end());
    for (;;) {
        if (row.empty()) return false;
        std::uint64_t lead = row.back().first;
        auto it = pivots_.find(lead);
        if (it == pivots_.end()) {
            // normalize to leading coefficient 1
            std::uint32_t inv = field_.inv(row.back().second);
            if (inv != 1)
                for (auto& [c, v] : row) v = field_.mul(v, inv);
            pivots_.emplace(lead, std::move(row));
            return true;
        }
        // row -= row.lead_coeff * pivot   (pivot has leading coefficient 1)
        std::uint32_t factor = row.back().second;
        const SparseRow& piv = it->second;
        SparseRow merged;
        merged.reserve(row.size() + piv.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < piv.size()) {
            if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                merged.push_back(row[i++]);
            } else if (i == row.size() || piv[j].first < row[i].first) {
                std::uint32_t v = field_.neg(field_.mul(factor, piv[j].second));
                if (v != 0) merged.emplace_back(piv[j].first, v);
                ++j;
            } else {
                std::uint32_t v = field_.sub(row[i].second, field_.mul(factor, piv[j].second));
                if (v != 0) merged.emplace_back(row[i].first, v);
                ++i;
                ++j;
            }
        }
        row = std::move(merged);
    }
}

PackedEchelon::PackedEchelon(std::uint64_t width) : words_((width + 63) / 64) {}

namespace {

std::int64_t top_bit(const std::vector<std::uint64_t>& bits) {
    for (std::size_t w = bits.size(); w-- > 0;) {
        if (bits[w]) return static_cast<std::int64_t>(w) * 64 + (63 - __builtin_clzll(bits[w]));
    }
    return -1;
}

} // namespace

bool PackedEchelon::insert(const std::vector<std::uint64_t>& cols) {
    std::vector<std::uint64_t> bits(words_, 0);
    for (auto c : cols) bits[c >> 6] ^= (std::uint64_t{1} << (c & 63));
    for (;;) {
        std::int64_t lead = top_bit(bits);
        if (lead < 0) return false;
        auto it = pivots_.find(static_cast<std::uint64_t>(lead));
        if (it == pivots_.end()) {
            pivots_.emplace(static_cast<std::uint64_t>(lead), std::move(bits));
            return true;
        }
        const auto& piv = it->second;
        for (std::size_t w = 0; w < words_; ++w) bits[w] ^= piv[w];
    }
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[a] = b;
    }
};

constexpr std::uint64_t kPackWidthLimit = 1u << 13;

std::uint64_t component_rank(const PrimeField& field,
                             const std::vector<const SparseFpMatrix::Entry*>& entries) {
    // component-local column ids
    std::unordered_map<std::uint64_t, std::uint64_t> col_id;
    for (const auto* e : entries) col_id.emplace(e->col, col_id.size());
    std::uint64_t width = col_id.size();

    // group entries into rows
    std::unordered_map<std::uint64_t, SparseRow> rows;
    for (const auto* e : entries) rows[e->row].emplace_back(col_id[e->col], e->value);

    std::vector<SparseRow> ordered;
    ordered.reserve(rows.size());
    for (auto& [r, row] : rows) ordered.push_back(std::move(row));
    std::sort(ordered.begin(), ordered.end(),
              [](const SparseRow& a, const SparseRow& b) { return a.size() < b.size(); });

    if (field.p() == 2 && width <= kPackWidthLimit) {
        PackedEchelon ech(width);
        std::vector<std::uint64_t> cols;
        for (const auto& row : ordered) {
            cols.clear();
            for (const auto& [c, v] : row) cols.push_back(c);
            ech.insert(cols);
        }
        return ech.rank();
    }
    SparseEchelon ech(field);
    for (auto& row : ordered) ech.insert(std::move(row));
    return ech.rank();
}

} // namespace

std::uint64_t rank_fp(const SparseFpMatrix& m, const PrimeField& field) {
    if (m.entries.empty()) return 0;
    if (m.nrows + m.ncols > (std::uint64_t{1} << 32))
        throw std::invalid_argument("rank_fp: matrix dimensions too large");

    UnionFind uf(static_cast<std::size_t>(m.nrows + m.ncols));
    for (const auto& e : m.entries)
        uf.unite(static_cast<std::uint32_t>(e.row),
                 static_cast<std::uint32_t>(m.nrows + e.col));

    std::unordered_map<std::uint32_t, std::vector<const SparseFpMatrix::Entry*>> comps;
    for (const auto& e : m.entries)
        comps[uf.find(static_cast<std::uint32_t>(e.row))].push_back(&e);

    std::uint64_t rank = 0;
    for (auto& [root, entries] : comps) rank += component_rank(field, entries);
    return rank;
}

} // namespace hk
