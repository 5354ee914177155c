#include "hk/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace hk {

namespace {

constexpr std::uint64_t kSizeCap = std::uint64_t{1} << 62;

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > kSizeCap / base) throw std::overflow_error("box size overflows");
        r *= base;
    }
    return r;
}

} // namespace

FrobeniusBox::FrobeniusBox(std::size_t m, int n, const PrimeField& field) : m_(m), n_(n) {
    if (n < 1) throw std::invalid_argument("Frobenius level must be >= 1");
    if (m < 1) throw std::invalid_argument("need at least one variable");
    q_ = checked_pow(field.p(), static_cast<std::uint64_t>(n));
    size_ = checked_pow(q_, m);
}

std::uint64_t FrobeniusBox::index(const Monomial& mono) const {
    if (mono.vars() != m_) throw std::invalid_argument("box index: variable count mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = m_; i-- > 0;) {
        auto e = mono.e[i];
        if (e < 0 || static_cast<std::uint64_t>(e) >= q_)
            throw std::out_of_range("monomial outside the box");
        idx = idx * q_ + static_cast<std::uint64_t>(e);
    }
    return idx;
}

Monomial FrobeniusBox::monomial(std::uint64_t idx) const {
    Exponents e(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
        e[i] = static_cast<std::int64_t>(idx % q_);
        idx /= q_;
    }
    return Monomial(std::move(e));
}

bool FrobeniusBox::contains(const LaurentMonomial& v) const {
    for (auto x : v.e)
        if (x < 0 || static_cast<std::uint64_t>(x) >= q_) return false;
    return true;
}

SparseFpMatrix build_mult_matrix(const Trinomial& f, const FrobeniusBox& box) {
    if (box.vars() != f.vars()) throw std::invalid_argument("box/polynomial variable count mismatch");
    SparseFpMatrix m;
    m.nrows = m.ncols = box.size();
    m.entries.reserve(box.size() * 2);
    const std::uint64_t q = box.q();
    const std::size_t nv = box.vars();

    // index deltas of the three term monomials, valid while no digit wraps
    std::uint64_t delta[3];
    for (int t = 0; t < 3; ++t) {
        std::uint64_t d = 0, scale = 1;
        for (std::size_t i = 0; i < nv; ++i) {
            d += static_cast<std::uint64_t>(f.mon(t + 1).e[i]) * scale;
            scale *= q;
        }
        delta[t] = d;
    }

    Exponents digits(nv, 0);
    for (std::uint64_t col = 0; col < box.size(); ++col) {
        for (int t = 0; t < 3; ++t) {
            const auto& mon = f.mon(t + 1).e;
            bool inside = true;
            for (std::size_t i = 0; i < nv; ++i) {
                if (digits[i] + mon[i] >= static_cast<std::int64_t>(q)) {
                    inside = false;
                    break;
                }
            }
            if (inside) m.add(col + delta[t], col, f.coeff(t + 1));
        }
        // increment mixed-radix counter
        for (std::size_t i = 0; i < nv; ++i) {
            if (static_cast<std::uint64_t>(++digits[i]) < q) break;
            digits[i] = 0;
        }
    }
    return m;
}

namespace {

FrobeniusBox guarded_box(const Trinomial& f, int n, std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("Frobenius level must be >= 1");
    FrobeniusBox box(f.vars(), n, f.field());
    if (box.size() > budget)
        throw budget_error("box of " + std::to_string(box.size()) + " basis monomials exceeds budget " +
                           std::to_string(budget));
    return box;
}

} // namespace

std::uint64_t colength(const Trinomial& f, int n, std::uint64_t budget) {
    FrobeniusBox box = guarded_box(f, n, budget);
    return box.size() - rank_fp(build_mult_matrix(f, box), f.field());
}

HKSeries hk_series(const Trinomial& f, int n_max, std::uint64_t budget) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    HKSeries s;
    s.p = f.field().p();
    s.poly = f.to_string();
    s.m = f.vars();
    for (int n = 1; n <= n_max; ++n) {
        try {
            FrobeniusBox box = guarded_box(f, n, budget);
            s.points.push_back({n, box.q(), colength(f, n, budget)});
        } catch (const budget_error&) {
            s.truncated = true;
            break;
        } catch (const std::overflow_error&) {
            s.truncated = true;
            break;
        }
    }
    return s;
}

std::vector<Monomial> standard_monomials(const Trinomial& f, int n, std::uint64_t budget) {
    FrobeniusBox box = guarded_box(f, n, budget);
    const std::uint64_t size = box.size();

    // rank of basis monomial i in deglex order; elimination pivots on the
    // deglex-largest entry of each row
    std::vector<std::uint64_t> order(size);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<Monomial> monos;
    monos.reserve(size);
    for (std::uint64_t i = 0; i < size; ++i) monos.push_back(box.monomial(i));
    std::sort(order.begin(), order.end(),
              [&](std::uint64_t a, std::uint64_t b) { return deglex_less(monos[a], monos[b]); });
    std::vector<std::uint64_t> deglex_rank(size);
    for (std::uint64_t r = 0; r < size; ++r) deglex_rank[order[r]] = r;

    SparseFpMatrix mult = build_mult_matrix(f, box);
    std::vector<SparseRow> rows(size);
    for (const auto& e : mult.entries) rows[e.col].emplace_back(deglex_rank[e.row], e.value);

    std::vector<bool> is_pivot(size, false);
    if (f.field().p() == 2 && size <= (std::uint64_t{1} << 13)) {
        PackedEchelon ech(size);
        std::vector<std::uint64_t> cols;
        for (auto& row : rows) {
            cols.clear();
            for (auto& [c, v] : row) cols.push_back(c);
            if (!cols.empty()) ech.insert(cols);
        }
        for (const auto& [lead, bits] : ech.pivots()) is_pivot[lead] = true;
    } else {
        SparseEchelon ech(f.field());
        for (auto& row : rows)
            if (!row.empty()) ech.insert(std::move(row));
        for (const auto& [lead, r] : ech.pivots()) is_pivot[lead] = true;
    }

    std::vector<Monomial> standard;
    for (std::uint64_t r = 0; r < size; ++r)
        if (!is_pivot[r]) standard.push_back(monos[order[r]]);
    return standard;
}

} // namespace hk
