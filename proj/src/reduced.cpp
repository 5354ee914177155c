#include "hk/reduced.hpp"

#include <algorithm>

namespace hk {

namespace {

Exponents vec_sub(const Exponents& a, const Exponents& b) {
    Exponents r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Exponents vec_addmul(Exponents base, const Exponents& dir, std::int64_t k) {
    for (std::size_t i = 0; i < base.size(); ++i) base[i] += k * dir[i];
    return base;
}

MutantDescriptor make_desc(const Monomial& a, const Trinomial& f, std::int64_t e1, std::int64_t e2,
                           std::int64_t e3) {
    MutantDescriptor d;
    d.e1 = e1;
    d.e2 = e2;
    d.e3 = e3;
    d.value = laurent_apply(a, f, e1, e2, e3);
    return d;
}

} // namespace

std::optional<std::int64_t> compute_M_ratio(const Monomial& a, const Trinomial& f, int which,
                                            std::uint64_t q) {
    if (which == 31) return least_clean_exit(a.e, f.mon(1).e, f.mon(3).e, q);
    if (which == 21) return least_clean_exit(a.e, f.mon(1).e, f.mon(2).e, q);
    throw std::invalid_argument("compute_M_ratio: which must be 31 or 21");
}

MContext m_context(const Monomial& a, const Trinomial& f, std::uint64_t q) {
    MContext ctx;
    ctx.m31 = compute_M_ratio(a, f, 31, q);
    ctx.m21 = compute_M_ratio(a, f, 21, q);
    ctx.p = f.field().p();
    return ctx;
}

std::uint32_t entry_of(const RowIndex& row, const ColIndex& col, const MContext& ctx) {
    PrimeField field(ctx.p);
    auto sign_pow = [&](std::int64_t t) -> std::uint32_t {
        return (t % 2 == 0) ? 1 : field.neg(1);
    };
    auto binom = [&](std::int64_t n, std::int64_t k) -> std::uint32_t {
        if (n < 0) return 0;
        return binom_mod_p(static_cast<std::uint64_t>(n), k, field);
    };

    const bool row31 = row.family == RowFamily::F31Low || row.family == RowFamily::F31High;
    const bool row21 = row.family == RowFamily::F21Low || row.family == RowFamily::F21High;

    if (row.family == RowFamily::CaseIIISingle) {
        if (col.family != ColFamily::ColMixed) return 0;
        return field.mul(sign_pow(col.a + col.b + 1), binom(col.a + col.b, col.a));
    }
    if (row31) {
        if (col.family == ColFamily::Col31) {
            if (0 <= col.a && col.a <= row.m && col.b >= row.x)
                return binom(col.b - row.x, row.m - col.a);
            return 0;
        }
        if (col.family == ColFamily::ColMixed) {
            if (ctx.m31 && row.m >= *ctx.m31) return 0;
            if (col.b == 0) return 0;
            return field.mul(sign_pow(col.a + col.b - row.m), binom(col.a + col.b - row.m - 1, col.a));
        }
        return 0; // Col21
    }
    if (row21) {
        if (col.family == ColFamily::Col21) {
            if (0 <= col.a && col.a <= row.m && col.b >= row.x)
                return binom(col.b - row.x, row.m - col.a);
            return 0;
        }
        if (col.family == ColFamily::ColMixed) {
            if (ctx.m21 && row.m >= *ctx.m21) return 0;
            if (col.b == 0) return 0;
            return field.mul(sign_pow(col.a + col.b - row.m), binom(col.a + col.b - row.m - 1, col.a));
        }
        return 0; // Col31
    }
    return 0;
}

namespace {

struct WalkDirs {
    Exponents u31, w31, u21, w21; // m1-m3, m2-m3, m1-m2, m3-m2
};

WalkDirs walk_dirs(const Trinomial& f) {
    WalkDirs d;
    d.u31 = vec_sub(f.mon(1).e, f.mon(3).e);
    d.w31 = vec_sub(f.mon(2).e, f.mon(3).e);
    d.u21 = vec_sub(f.mon(1).e, f.mon(2).e);
    d.w21 = vec_sub(f.mon(3).e, f.mon(2).e);
    return d;
}

/// Mutator range [a_m, b_m]: x >= 1 with
/// A ([-3]/[1])^m ([-3]/[2])^{x-1} [-3] inside the box (and the 21 analogue).
IntInterval mutator_range(const Monomial& a, const Trinomial& f, std::uint64_t q, int family,
                          std::int64_t m, std::int64_t bound) {
    WalkDirs d = walk_dirs(f);
    if (family == 31) {
        Exponents base = vec_addmul(vec_addmul(a.e, d.u31, m), d.w31, -1);
        base = vec_sub(base, f.mon(3).e);
        return box_interval(base, d.w31, q, 1, bound);
    }
    Exponents base = vec_addmul(vec_addmul(a.e, d.u21, m), d.w21, -1);
    base = vec_sub(base, f.mon(2).e);
    return box_interval(base, d.w21, q, 1, bound);
}

/// x-range with the row descriptor's own value inside the box.
IntInterval row_value_range(const Monomial& a, const Trinomial& f, std::uint64_t q, int family,
                            std::int64_t m, std::int64_t bound) {
    WalkDirs d = walk_dirs(f);
    if (family == 31) return box_interval(vec_addmul(a.e, d.u31, m), d.w31, q, 1, bound);
    return box_interval(vec_addmul(a.e, d.u21, m), d.w21, q, 1, bound);
}

/// m-range of the low rows (x = 1) whose value stays inside the box.
IntInterval low_value_range(const Monomial& a, const Trinomial& f, std::uint64_t q, int family,
                            std::int64_t lo, std::int64_t hi) {
    WalkDirs d = walk_dirs(f);
    if (family == 31) return box_interval(vec_addmul(a.e, d.w31, 1), d.u31, q, lo, hi);
    return box_interval(vec_addmul(a.e, d.w21, 1), d.u21, q, lo, hi);
}

} // namespace

std::vector<RowIndex> enumerate_rows(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                     const MContext& ctx, std::int64_t bound) {
    std::vector<RowIndex> rows;
    rows.push_back({RowFamily::CaseIIISingle, 0, 0, make_desc(a, f, 1, -1, 0)});

    std::int64_t low31_hi = ctx.m31 ? std::min(bound, *ctx.m31 - 1) : bound;
    for (std::int64_t m = 0; m <= low31_hi; ++m)
        rows.push_back({RowFamily::F31Low, m, 1, make_desc(a, f, m, 1, -(m + 1))});

    if (ctx.m31) {
        for (std::int64_t m = *ctx.m31; m <= bound; ++m) {
            IntInterval r = mutator_range(a, f, q, 31, m, bound);
            for (std::int64_t x = r.lo; x <= r.hi; ++x)
                rows.push_back({RowFamily::F31High, m, x, make_desc(a, f, m, x, -(m + x))});
        }
    }

    std::int64_t low21_hi = ctx.m21 ? std::min(bound, *ctx.m21 - 1) : bound;
    for (std::int64_t m = 1; m <= low21_hi; ++m)
        rows.push_back({RowFamily::F21Low, m, 1, make_desc(a, f, m, -(m + 1), 1)});

    if (ctx.m21) {
        for (std::int64_t m = *ctx.m21; m <= bound; ++m) {
            IntInterval r = mutator_range(a, f, q, 21, m, bound);
            for (std::int64_t y = r.lo; y <= r.hi; ++y)
                rows.push_back({RowFamily::F21High, m, y, make_desc(a, f, m, -(m + y), y)});
        }
    }

    std::sort(rows.begin(), rows.end(), [](const RowIndex& l, const RowIndex& r) {
        return descriptor_less(r.desc, l.desc); // decreasing
    });
    return rows;
}

std::vector<ColIndex> enumerate_cols(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                     std::int64_t bound) {
    std::vector<ColIndex> cols;
    for (std::int64_t ca = 0; ca <= bound; ++ca) {
        for (std::int64_t cb = 0; cb + ca <= bound; ++cb) {
            if (ca + cb < 1) continue;
            MutantDescriptor d31 = make_desc(a, f, ca, cb, -(ca + cb));
            if (is_convergent(d31.value, q)) cols.push_back({ColFamily::Col31, ca, cb, d31});
            if (ca >= 1) {
                MutantDescriptor d21 = make_desc(a, f, ca, -(ca + cb), cb);
                if (is_convergent(d21.value, q)) cols.push_back({ColFamily::Col21, ca, cb, d21});
            }
            MutantDescriptor dmx = make_desc(a, f, ca + cb, -ca, -cb);
            if (is_convergent(dmx.value, q)) cols.push_back({ColFamily::ColMixed, ca, cb, dmx});
        }
    }
    std::sort(cols.begin(), cols.end(), [](const ColIndex& l, const ColIndex& r) {
        if (descriptor_less(l.desc, r.desc)) return true;
        if (descriptor_less(r.desc, l.desc)) return false;
        return l.family < r.family; // distinct families can share a descriptor value only by exponents
    });
    return cols;
}

ReducedSystem build_reduced_system(const Monomial& a, const Trinomial& f, std::uint64_t q,
                                   std::int64_t bound) {
    ReducedSystem sys;
    sys.ctx = m_context(a, f, q);
    sys.bound = bound;
    std::vector<RowIndex> all_rows = enumerate_rows(a, f, q, sys.ctx, bound);
    // forced rows must be non-convergent; the e_A carrier stays regardless
    for (auto& r : all_rows) {
        if (r.family == RowFamily::CaseIIISingle || !is_convergent(r.desc.value, q))
            sys.rows.push_back(std::move(r));
    }
    sys.cols = enumerate_cols(a, f, q, bound);

    sys.matrix.nrows = sys.rows.size();
    sys.matrix.ncols = sys.cols.size();
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        if (sys.rows[i].family == RowFamily::CaseIIISingle) sys.e_row = i;
        for (std::size_t j = 0; j < sys.cols.size(); ++j) {
            std::uint32_t v = entry_of(sys.rows[i], sys.cols[j], sys.ctx);
            if (v != 0) sys.matrix.add(i, j, v);
        }
    }
    return sys;
}

bool system_consistent(const ReducedSystem& sys, const PrimeField& field) {
    if (!sys.e_row) return true;
    // split rows into the groups; only the group with the e_A row can be
    // inconsistent, the others are homogeneous
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
        auto fam = sys.rows[i].family;
        if (fam == RowFamily::CaseIIISingle || fam == RowFamily::F31Low) group.push_back(i);
    }
    std::vector<std::int64_t> local(sys.rows.size(), -1);
    for (std::size_t k = 0; k < group.size(); ++k) local[group[k]] = static_cast<std::int64_t>(k);

    SparseFpMatrix plain;
    plain.nrows = group.size();
    plain.ncols = sys.matrix.ncols;
    for (const auto& e : sys.matrix.entries)
        if (local[e.row] >= 0) plain.add(static_cast<std::uint64_t>(local[e.row]), e.col, e.value);

    SparseFpMatrix augmented = plain;
    augmented.ncols += 1;
    augmented.add(static_cast<std::uint64_t>(local[*sys.e_row]), plain.ncols, 1);
    return rank_fp(plain, field) == rank_fp(augmented, field);
}

const char* solvability_name(Solvability s) {
    switch (s) {
        case Solvability::Solvable: return "Solvable";
        case Solvability::Unsolvable: return "Unsolvable";
        case Solvability::Unstable: return "Unstable";
    }
    return "?";
}

Solvability decide_solvability(const Monomial& a, const Trinomial& f, std::uint64_t q,
                               std::int64_t bound, std::int64_t delta) {
    bool v1 = system_consistent(build_reduced_system(a, f, q, bound), f.field());
    bool v2 = system_consistent(build_reduced_system(a, f, q, bound + delta), f.field());
    if (v1 != v2) return Solvability::Unstable;
    return v1 ? Solvability::Solvable : Solvability::Unsolvable;
}

std::vector<std::int64_t> ClassKey::flatten() const {
    std::vector<std::int64_t> out;
    auto push_opt = [&](const std::optional<std::int64_t>& v) {
        out.push_back(v ? 1 : 0);
        out.push_back(v ? *v : 0);
    };
    auto push_iv = [&](const IntInterval& iv) {
        if (iv.empty()) {
            out.push_back(0);
            out.push_back(-1);
        } else {
            out.push_back(iv.lo);
            out.push_back(iv.hi);
        }
    };
    push_opt(m31);
    push_opt(m21);
    push_iv(low31_valid);
    push_iv(low21_valid);
    for (const auto* vec : {&high31, &high21, &rowval31, &rowval21, &colbox31, &colbox21, &colboxmix}) {
        out.push_back(static_cast<std::int64_t>(vec->size()));
        for (const auto& iv : *vec) push_iv(iv);
    }
    return out;
}

ClassKey class_key(const Monomial& a, const Trinomial& f, std::uint64_t q, std::int64_t bound) {
    ClassKey key;
    MContext ctx = m_context(a, f, q);
    key.m31 = ctx.m31;
    key.m21 = ctx.m21;

    std::int64_t lo31_hi = ctx.m31 ? std::min(bound, *ctx.m31 - 1) : bound;
    key.low31_valid = low_value_range(a, f, q, 31, 0, lo31_hi);
    std::int64_t lo21_hi = ctx.m21 ? std::min(bound, *ctx.m21 - 1) : bound;
    key.low21_valid = low_value_range(a, f, q, 21, 1, lo21_hi);

    WalkDirs dirs = walk_dirs(f);
    for (std::int64_t m = 0; m <= bound; ++m) {
        bool hi31 = ctx.m31 && m >= *ctx.m31;
        key.high31.push_back(hi31 ? mutator_range(a, f, q, 31, m, bound) : IntInterval{});
        key.rowval31.push_back(hi31 ? row_value_range(a, f, q, 31, m, bound) : IntInterval{});
        bool hi21 = ctx.m21 && m >= *ctx.m21;
        key.high21.push_back(hi21 ? mutator_range(a, f, q, 21, m, bound) : IntInterval{});
        key.rowval21.push_back(hi21 ? row_value_range(a, f, q, 21, m, bound) : IntInterval{});
    }
    for (std::int64_t ca = 0; ca <= bound; ++ca) {
        key.colbox31.push_back(box_interval(vec_addmul(a.e, dirs.u31, ca), dirs.w31, q, 0, bound - ca));
        key.colbox21.push_back(box_interval(vec_addmul(a.e, dirs.u21, ca), dirs.w21, q, 0, bound - ca));
        key.colboxmix.push_back(box_interval(vec_addmul(a.e, dirs.u21, ca), dirs.u31, q, 0, bound - ca));
    }
    return key;
}

ClassTable count_unsolvable(const Trinomial& f, int n, std::int64_t bound, std::uint64_t budget) {
    FrobeniusBox box(f.vars(), n, f.field());
    if (box.size() > budget)
        throw budget_error("box of " + std::to_string(box.size()) + " basis monomials exceeds budget " +
                           std::to_string(budget));
    ClassTable table;
    table.box_size = box.size();
    table.bound = bound;

    std::map<std::vector<std::int64_t>, std::size_t> class_of;
    for (std::uint64_t i = 0; i < box.size(); ++i) {
        Monomial a = box.monomial(i);
        if (check_condition_i(a, f)) {
            ++table.in_via_i;
            continue;
        }
        if (check_condition_ii(a, f, box.q())) {
            ++table.in_via_ii;
            continue;
        }
        if (!f.mon(2).divides(a) && !f.mon(3).divides(a)) {
            ++table.no_divisor;
            continue;
        }
        ++table.route_iii;
        ClassKey key = class_key(a, f, box.q(), bound);
        auto flat = key.flatten();
        auto it = class_of.find(flat);
        if (it == class_of.end()) {
            ClassInfo info;
            info.key = std::move(key);
            info.representative = a;
            info.size = 1;
            table.classes.push_back(std::move(info));
            class_of.emplace(std::move(flat), table.classes.size() - 1);
        } else {
            ++table.classes[it->second].size;
        }
    }

    for (auto& cls : table.classes) {
        cls.verdict = decide_solvability(cls.representative, f, box.q(), bound);
        for (std::int64_t t = 1; t <= bound; ++t) {
            ReducedSystem sys = build_reduced_system(cls.representative, f, box.q(), t);
            cls.unsolvable_at.push_back(!system_consistent(sys, f.field()));
        }
        switch (cls.verdict) {
            case Solvability::Solvable: table.solvable += cls.size; break;
            case Solvability::Unsolvable: table.unsolvable += cls.size; break;
            case Solvability::Unstable: table.unstable += cls.size; break;
        }
    }
    return table;
}

} // namespace hk
