#include "hk/mutation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "hk/walks.hpp"

namespace hk {

bool is_convergent(const LaurentMonomial& v, std::uint64_t q) {
    for (auto x : v.e)
        if (x < 0 || static_cast<std::uint64_t>(x) >= q) return true;
    return false;
}

bool in_l_family(std::int64_t e1, std::int64_t e2, std::int64_t e3) {
    return !(e3 > 0 && e1 <= 0 && e2 <= 0);
}

namespace {

struct TripleHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& k) const {
        std::size_t h = 0;
        for (auto x : k) h = h * 1000003u + std::hash<std::int64_t>{}(static_cast<std::uint64_t>(x));
        return h;
    }
};

using DescKey = std::array<std::int64_t, 3>;

DescKey key_of(std::int64_t e1, std::int64_t e2, std::int64_t e3) { return {e1, e2, e3}; }

bool divides_value(const Monomial& mon, const LaurentMonomial& v) {
    for (std::size_t i = 0; i < v.e.size(); ++i)
        if (v.e[i] < mon.e[i]) return false;
    return true;
}

LaurentMonomial shift_value(const LaurentMonomial& v, const Monomial& mon, std::int64_t sign) {
    Exponents e = v.e;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += sign * mon.e[i];
    return LaurentMonomial(std::move(e));
}

void sort_descriptors(std::vector<MutantDescriptor>& v) {
    std::sort(v.begin(), v.end(), descriptor_less);
}

} // namespace

MutantSets generate_mutant_sets(const Monomial& a, const Trinomial& f, std::uint64_t q, int depth) {
    if (depth < 1) throw std::invalid_argument("mutant set depth must be >= 1");
    MutantSets sets;
    sets.base = a;
    sets.q = q;
    sets.depth = depth;

    LaurentMonomial seed(a.e);
    std::unordered_set<DescKey, TripleHash> visited;
    std::deque<std::pair<MutantDescriptor, int>> queue;
    if (!is_convergent(seed, q)) {
        MutantDescriptor d{0, 0, 0, seed};
        visited.insert(key_of(0, 0, 0));
        queue.emplace_back(d, 0);
    }
    while (!queue.empty()) {
        auto [d, dist] = queue.front();
        queue.pop_front();
        sets.b_set.push_back(d);
        if (dist == depth) continue;
        for (int tau = 1; tau <= 3; ++tau) {
            if (!divides_value(f.mon(tau), d.value)) continue;
            for (int sigma = 1; sigma <= 3; ++sigma) {
                if (sigma == tau) continue;
                MutantDescriptor child = d;
                auto bump = [&](int t, std::int64_t by) {
                    if (t == 1) child.e1 += by;
                    if (t == 2) child.e2 += by;
                    if (t == 3) child.e3 += by;
                };
                bump(tau, -1);
                bump(sigma, +1);
                child.value = shift_value(shift_value(d.value, f.mon(tau), -1), f.mon(sigma), +1);
                if (is_convergent(child.value, q)) continue;
                if (!visited.insert(key_of(child.e1, child.e2, child.e3)).second) continue;
                queue.emplace_back(child, dist + 1);
            }
        }
    }

    std::unordered_set<DescKey, TripleHash> a_seen;
    for (const auto& b : sets.b_set) {
        for (int tau = 1; tau <= 3; ++tau) {
            if (!divides_value(f.mon(tau), b.value)) continue;
            MutantDescriptor d = b;
            if (tau == 1) d.e1 -= 1;
            if (tau == 2) d.e2 -= 1;
            if (tau == 3) d.e3 -= 1;
            d.value = shift_value(b.value, f.mon(tau), -1);
            if (a_seen.insert(key_of(d.e1, d.e2, d.e3)).second) sets.a_set.push_back(d);
        }
    }

    std::unordered_set<DescKey, TripleHash> e_seen;
    for (const auto& d : sets.a_set) {
        for (int tau = 1; tau <= 3; ++tau) {
            MutantDescriptor b = d;
            if (tau == 1) b.e1 += 1;
            if (tau == 2) b.e2 += 1;
            if (tau == 3) b.e3 += 1;
            b.value = shift_value(d.value, f.mon(tau), +1);
            if (e_seen.insert(key_of(b.e1, b.e2, b.e3)).second) sets.e_set.push_back(b);
        }
    }

    for (const auto& d : sets.e_set)
        if (in_l_family(d.e1, d.e2, d.e3)) sets.l_set.push_back(d);

    sort_descriptors(sets.b_set);
    sort_descriptors(sets.a_set);
    sort_descriptors(sets.e_set);
    sort_descriptors(sets.l_set);
    return sets;
}

AssembledSystem assemble_system(const Monomial& a, const Trinomial& f, const MutantSets& sets) {
    if (!(sets.base == a)) throw std::invalid_argument("assemble_system: sets were generated for a different monomial");
    AssembledSystem sys;
    sys.col_index = sets.a_set; // already ascending
    sys.row_index = sets.l_set;
    std::reverse(sys.row_index.begin(), sys.row_index.end()); // descending

    std::unordered_map<DescKey, std::size_t, TripleHash> row_of;
    for (std::size_t i = 0; i < sys.row_index.size(); ++i) {
        const auto& r = sys.row_index[i];
        row_of.emplace(key_of(r.e1, r.e2, r.e3), i);
    }

    sys.matrix.nrows = sys.row_index.size();
    sys.matrix.ncols = sys.col_index.size();
    for (std::size_t col = 0; col < sys.col_index.size(); ++col) {
        const auto& d = sys.col_index[col];
        for (int tau = 1; tau <= 3; ++tau) {
            std::int64_t e1 = d.e1 + (tau == 1), e2 = d.e2 + (tau == 2), e3 = d.e3 + (tau == 3);
            auto it = row_of.find(key_of(e1, e2, e3));
            if (it != row_of.end()) sys.matrix.add(it->second, col, f.coeff(tau));
        }
    }

    for (std::size_t i = 0; i < sys.row_index.size(); ++i) {
        const auto& r = sys.row_index[i];
        if (is_convergent(r.value, sets.q)) continue;
        if (r.e1 == 0 && r.e2 == 0 && r.e3 == 0)
            sys.rhs.a_row = i;
        else
            sys.rhs.forced_zero_rows.push_back(i);
    }
    return sys;
}

RowSplit select_c1_and_split(const AssembledSystem& sys) {
    // smallest nonzero column per row; columns are stored ascending so the
    // column index order is the order on A(A,f)
    std::vector<std::int64_t> c1(sys.row_index.size(), -1);
    for (const auto& e : sys.matrix.entries) {
        auto& best = c1[e.row];
        if (best < 0 || static_cast<std::int64_t>(e.col) < best) best = static_cast<std::int64_t>(e.col);
    }
    // rows sharing a C1 column: all but the smallest w.r.t. the row order go to R
    std::map<std::int64_t, std::vector<std::size_t>> by_col;
    for (std::size_t i = 0; i < c1.size(); ++i)
        if (c1[i] >= 0) by_col[c1[i]].push_back(i);

    RowSplit split;
    for (std::size_t i = 0; i < c1.size(); ++i)
        if (c1[i] < 0) split.zero_rows.push_back(sys.row_index[i]);
    for (auto& [col, rows] : by_col) {
        if (rows.size() == 1) {
            split.s_set.push_back(sys.row_index[rows[0]]);
            continue;
        }
        std::size_t least = rows[0];
        for (auto r : rows)
            if (descriptor_less(sys.row_index[r], sys.row_index[least])) least = r;
        for (auto r : rows) {
            if (r == least)
                split.s_set.push_back(sys.row_index[r]);
            else
                split.r_set.push_back(sys.row_index[r]);
        }
    }
    sort_descriptors(split.r_set);
    sort_descriptors(split.s_set);
    return split;
}

bool check_condition_i(const Monomial& a, const Trinomial& f) {
    return f.mon(1).divides(a);
}

std::optional<std::int64_t> check_condition_ii(const Monomial& a, const Trinomial& f, std::uint64_t q) {
    if (check_condition_i(a, f)) return std::nullopt;
    if (!f.mon(2).divides(a)) return std::nullopt;
    if (classify_variables(f).extra.empty()) return std::nullopt;
    return least_clean_exit(a.e, f.mon(1).e, f.mon(2).e, q);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::InViaI: return "InViaI";
        case Verdict::InViaII: return "InViaII";
        case Verdict::InViaIII: return "InViaIII";
        case Verdict::NotIn: return "NotIn";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

bool value_system_solvable(const Monomial& a, const Trinomial& f, const MutantSets& sets) {
    const PrimeField& field = f.field();
    // like-terms system: one unknown per distinct value of A(A,f), one
    // equation per distinct in-box product value
    std::map<Exponents, std::size_t> col_of;
    for (const auto& d : sets.a_set) col_of.emplace(d.value.e, col_of.size());

    std::map<Exponents, std::map<std::size_t, std::uint32_t>> rows;
    for (const auto& [val, col] : col_of) {
        LaurentMonomial v(val);
        for (int tau = 1; tau <= 3; ++tau) {
            LaurentMonomial target = shift_value(v, f.mon(tau), +1);
            if (is_convergent(target, sets.q)) continue; // free coefficient
            auto& row = rows[target.e];
            auto [it, fresh] = row.emplace(col, f.coeff(tau));
            if (!fresh) it->second = field.add(it->second, f.coeff(tau));
        }
    }

    SparseFpMatrix forced;
    forced.ncols = col_of.size();
    SparseRow a_row;
    for (const auto& [val, row] : rows) {
        if (val == a.e) {
            for (const auto& [col, v] : row)
                if (v != 0) a_row.emplace_back(col, v);
            continue;
        }
        for (const auto& [col, v] : row)
            if (v != 0) forced.add(forced.nrows, col, v);
        ++forced.nrows;
    }
    if (a_row.empty()) return false; // A's coefficient is identically zero

    std::uint64_t base_rank = rank_fp(forced, field);
    SparseFpMatrix augmented = forced;
    for (const auto& [col, v] : a_row) augmented.add(augmented.nrows, col, v);
    ++augmented.nrows;
    return rank_fp(augmented, field) > base_rank;
}

Membership classify_monomial(const Monomial& a, const Trinomial& f, std::uint64_t q, int depth) {
    Membership m;
    m.depth = depth;
    if (check_condition_i(a, f)) {
        m.verdict = Verdict::InViaI;
        return m;
    }
    if (auto witness = check_condition_ii(a, f, q)) {
        m.verdict = Verdict::InViaII;
        m.witness_m = witness;
        return m;
    }
    if (!f.mon(2).divides(a) && !f.mon(3).divides(a)) {
        m.verdict = Verdict::NotIn;
        return m;
    }
    bool s1 = value_system_solvable(a, f, generate_mutant_sets(a, f, q, depth));
    bool s2 = value_system_solvable(a, f, generate_mutant_sets(a, f, q, depth + 2));
    if (s1 != s2) {
        m.verdict = Verdict::Undetermined;
        return m;
    }
    m.verdict = s1 ? Verdict::InViaIII : Verdict::NotIn;
    return m;
}

} // namespace hk
