#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hk/reduced.hpp"
#include "test_support.hpp"

using namespace hk;

namespace {

Monomial mono(Exponents e) { return Monomial(std::move(e)); }

// literal step-by-step simulation of the clean-exit walk
std::optional<std::int64_t> simulate_clean_exit(const Exponents& a, const Exponents& mult,
                                                const Exponents& divisor, std::uint64_t q,
                                                std::int64_t kmax) {
    for (std::int64_t k = 1; k <= kmax; ++k) {
        bool convergent = false, negative = false;
        for (std::size_t v = 0; v < a.size(); ++v) {
            std::int64_t s = mult[v] - divisor[v];
            std::int64_t val = a[v] + k * s;
            std::int64_t pre = a[v] + (k - 1) * s - divisor[v];
            if (val < 0 || val >= static_cast<std::int64_t>(q)) convergent = true;
            if (pre < 0) negative = true;
        }
        if (convergent && !negative) return k;
    }
    return std::nullopt;
}

// independent transcription of the three case formulas, exact integers
std::uint32_t entry_reference(const RowIndex& row, const ColIndex& col,
                              std::optional<std::int64_t> m31, std::optional<std::int64_t> m21,
                              std::uint64_t p) {
    auto binom = [&](std::int64_t n, std::int64_t k) -> std::uint64_t {
        if (n < 0 || k < 0 || k > n) return 0;
        return hk_test::exact_binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
    };
    auto signed_mod = [&](std::int64_t parity, std::uint64_t b) -> std::uint32_t {
        std::uint64_t v = b % p;
        if (parity % 2 != 0 && v != 0) v = p - v;
        return static_cast<std::uint32_t>(v);
    };
    if (row.family == RowFamily::CaseIIISingle) {
        if (col.family != ColFamily::ColMixed) return 0;
        return signed_mod(col.a + col.b + 1, binom(col.a + col.b, col.a));
    }
    bool is31 = row.family == RowFamily::F31Low || row.family == RowFamily::F31High;
    ColFamily own = is31 ? ColFamily::Col31 : ColFamily::Col21;
    std::optional<std::int64_t> m_ratio = is31 ? m31 : m21;
    if (col.family == own) {
        if (col.a >= 0 && col.a <= row.m && col.b >= row.x)
            return static_cast<std::uint32_t>(binom(col.b - row.x, row.m - col.a) % p);
        return 0;
    }
    if (col.family == ColFamily::ColMixed) {
        if (m_ratio && row.m >= *m_ratio) return 0;
        if (col.b == 0) return 0;
        return signed_mod(col.a + col.b - row.m, binom(col.a + col.b - row.m - 1, col.a));
    }
    return 0;
}

} // namespace

TEST_CASE("ratio walk thresholds") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    SUBCASE("hand values on the conic at q = 4") {
        // A = x0*x1^3: the [-2]/[1] walk ends at x0^4 after 3 steps
        CHECK(compute_M_ratio(mono({1, 3}), conic, 21, 4) == 3);
        // the [-3]/[1] walk always exits through a negative x1 exponent
        CHECK_FALSE(compute_M_ratio(mono({1, 3}), conic, 31, 4).has_value());
        CHECK_FALSE(compute_M_ratio(mono({0, 2}), conic, 21, 4).has_value());
        // immediate clean exit
        CHECK(compute_M_ratio(mono({3, 2}), conic, 31, 4) == 1);
    }
    SUBCASE("closed form equals step-by-step simulation") {
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<std::int64_t> exp_d(0, 3);
        for (int trial = 0; trial < 2000; ++trial) {
            std::uint64_t q = std::uint64_t{1} << (1 + trial % 3); // 2, 4, 8
            Exponents a(2), mu(2), dv(2);
            std::uniform_int_distribution<std::int64_t> box_d(0, static_cast<std::int64_t>(q) - 1);
            for (auto& x : a) x = box_d(rng);
            for (auto& x : mu) x = exp_d(rng);
            for (auto& x : dv) x = exp_d(rng);
            if (mu == dv) continue;
            auto fast = least_clean_exit(a, mu, dv, q);
            auto slow = simulate_clean_exit(a, mu, dv, q, 4 * static_cast<std::int64_t>(q) + 8);
            CHECK(fast == slow);
        }
    }
    SUBCASE("nondecreasing in q") {
        Trinomial f = parse_trinomial("x0^2 + x0*x1 + x0*x2", 2);
        Monomial a = mono({1, 3, 2});
        std::optional<std::int64_t> prev;
        for (std::uint64_t q : {4u, 8u, 16u}) {
            auto m = compute_M_ratio(a, f, 21, q);
            if (prev && m) CHECK(*m >= *prev);
            if (m) prev = m;
        }
    }
}

TEST_CASE("entry_of case formulas") {
    MContext ctx;
    ctx.p = 2;
    ctx.m31 = 3;
    ctx.m21 = 2;
    MutantDescriptor dummy;

    RowIndex r31{RowFamily::F31High, 1, 1, dummy};
    SUBCASE("own-family binomial") {
        ColIndex c{ColFamily::Col31, 1, 2, dummy};
        CHECK(entry_of(r31, c, ctx) == 1); // C(1, 0)
    }
    SUBCASE("case III at (0,0) gives -1") {
        RowIndex r{RowFamily::CaseIIISingle, 0, 0, dummy};
        ColIndex c{ColFamily::ColMixed, 0, 0, dummy};
        CHECK(entry_of(r, c, ctx) == 1); // -1 mod 2
        MContext ctx3 = ctx;
        ctx3.p = 3;
        CHECK(entry_of(r, c, ctx3) == 2); // -1 mod 3
    }
    SUBCASE("mixed column vanishes at and past the threshold") {
        RowIndex high{RowFamily::F31High, 3, 1, dummy};
        ColIndex c{ColFamily::ColMixed, 1, 1, dummy};
        CHECK(entry_of(high, c, ctx) == 0);
    }
    SUBCASE("cross-family zeros") {
        ColIndex c21{ColFamily::Col21, 2, 1, dummy};
        CHECK(entry_of(r31, c21, ctx) == 0);
        RowIndex r21{RowFamily::F21Low, 1, 1, dummy};
        ColIndex c31{ColFamily::Col31, 1, 1, dummy};
        CHECK(entry_of(r21, c31, ctx) == 0);
        RowIndex rIII{RowFamily::CaseIIISingle, 0, 0, dummy};
        CHECK(entry_of(rIII, c21, ctx) == 0);
        CHECK(entry_of(rIII, c31, ctx) == 0);
    }
    SUBCASE("own-family support is {0 <= a <= m, b >= x}") {
        for (std::int64_t m = 0; m <= 6; ++m)
            for (std::int64_t x = 1; x <= 6; ++x)
                for (std::int64_t ca = 0; ca <= 6; ++ca)
                    for (std::int64_t cb = 0; cb <= 6; ++cb) {
                        RowIndex r{RowFamily::F31High, m, x, dummy};
                        ColIndex c{ColFamily::Col31, ca, cb, dummy};
                        if (!(ca <= m && cb >= x)) CHECK(entry_of(r, c, ctx) == 0);
                    }
    }
    SUBCASE("agrees with an exact-integer transcription") {
        for (std::uint64_t p : {2u, 3u, 5u}) {
            MContext c2;
            c2.p = p;
            c2.m31 = 2;
            c2.m21 = 4;
            std::vector<RowIndex> rows;
            rows.push_back({RowFamily::CaseIIISingle, 0, 0, dummy});
            for (std::int64_t m = 0; m <= 6; ++m)
                for (std::int64_t x = 1; x <= 6; ++x) {
                    rows.push_back({m < *c2.m31 ? RowFamily::F31Low : RowFamily::F31High, m, x, dummy});
                    rows.push_back({m < *c2.m21 ? RowFamily::F21Low : RowFamily::F21High, m, x, dummy});
                }
            for (const auto& r : rows)
                for (std::int64_t ca = 0; ca <= 6; ++ca)
                    for (std::int64_t cb = 0; cb <= 6; ++cb)
                        for (ColFamily fam : {ColFamily::Col31, ColFamily::Col21, ColFamily::ColMixed}) {
                            ColIndex c{fam, ca, cb, dummy};
                            CHECK(entry_of(r, c, c2) == entry_reference(r, c, c2.m31, c2.m21, p));
                        }
        }
    }
}

TEST_CASE("row enumeration") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    SUBCASE("M31 = 1 gives a single low row") {
        Monomial a = mono({3, 2});
        MContext ctx = m_context(a, conic, 4);
        REQUIRE(ctx.m31 == 1);
        auto rows = enumerate_rows(a, conic, 4, ctx, 8);
        std::size_t lows = 0;
        for (const auto& r : rows)
            if (r.family == RowFamily::F31Low) ++lows;
        CHECK(lows == 1);
    }
    SUBCASE("high ranges are contiguous and the count formula holds") {
        Monomial a = mono({1, 3});
        MContext ctx = m_context(a, conic, 4);
        REQUIRE(ctx.m21 == 3);
        auto rows = enumerate_rows(a, conic, 4, ctx, 10);
        std::map<std::int64_t, std::set<std::int64_t>> high21;
        std::size_t single = 0, low31 = 0, low21 = 0, high_total = 0;
        for (const auto& r : rows) {
            switch (r.family) {
                case RowFamily::CaseIIISingle: ++single; break;
                case RowFamily::F31Low: ++low31; break;
                case RowFamily::F21Low: ++low21; break;
                case RowFamily::F21High:
                    ++high_total;
                    high21[r.m].insert(r.x);
                    break;
                case RowFamily::F31High: ++high_total; break;
            }
        }
        CHECK(single == 1);
        CHECK(low21 == static_cast<std::size_t>(*ctx.m21 - 1));
        std::size_t range_sum = 0;
        for (const auto& [m, xs] : high21) {
            CHECK(*xs.rbegin() - *xs.begin() + 1 == static_cast<std::int64_t>(xs.size())); // contiguous
            range_sum += xs.size();
        }
        CHECK(rows.size() == single + low31 + low21 + high_total);
        CHECK(high_total == range_sum); // no 31-high rows here (M31 absent)
        // rows are in decreasing order
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(descriptor_less(rows[i].desc, rows[i - 1].desc));
    }
}

TEST_CASE("reduced system construction") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    Monomial a = mono({1, 3});
    ReducedSystem sys = build_reduced_system(a, conic, 4, 8);
    REQUIRE(sys.e_row.has_value());
    CHECK(sys.rows[*sys.e_row].family == RowFamily::CaseIIISingle);

    SUBCASE("regeneration: every entry equals entry_of") {
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> got;
        for (const auto& e : sys.matrix.entries) got[{e.row, e.col}] = e.value;
        for (std::size_t i = 0; i < sys.rows.size(); ++i)
            for (std::size_t j = 0; j < sys.cols.size(); ++j) {
                std::uint32_t expect = entry_of(sys.rows[i], sys.cols[j], sys.ctx);
                auto it = got.find({i, j});
                CHECK((it == got.end() ? 0u : it->second) == expect);
            }
    }
    SUBCASE("column values are convergent, row values are not") {
        for (const auto& c : sys.cols) CHECK(is_convergent(c.desc.value, 4));
        for (const auto& r : sys.rows)
            if (r.family != RowFamily::CaseIIISingle) CHECK_FALSE(is_convergent(r.desc.value, 4));
    }
    SUBCASE("char-2 entries equal the binomial parity") {
        PrimeField f2(2);
        for (const auto& e : sys.matrix.entries) CHECK(e.value == 1);
        for (std::size_t i = 0; i < sys.rows.size(); ++i) {
            const auto& r = sys.rows[i];
            if (r.family != RowFamily::F21Low && r.family != RowFamily::F21High) continue;
            for (std::size_t j = 0; j < sys.cols.size(); ++j) {
                const auto& c = sys.cols[j];
                if (c.family != ColFamily::Col21) continue;
                std::uint32_t expect = 0;
                if (c.a <= r.m && c.b >= r.x) expect = binom_mod_p(c.b - r.x, r.m - c.a, f2);
                CHECK(entry_of(r, c, sys.ctx) == expect);
            }
        }
    }
}

TEST_CASE("solvability verdicts") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    SUBCASE("synthetic: zero matrix with a marked row is inconsistent") {
        ReducedSystem sys;
        sys.ctx.p = 2;
        MutantDescriptor d;
        d.value = LaurentMonomial({0, 0});
        sys.rows.push_back({RowFamily::CaseIIISingle, 0, 0, d});
        sys.matrix.nrows = 1;
        sys.matrix.ncols = 2;
        sys.e_row = 0;
        CHECK_FALSE(system_consistent(sys, PrimeField(2)));
        sys.e_row.reset();
        CHECK(system_consistent(sys, PrimeField(2)));
    }
    SUBCASE("verdicts are stable on the conic box") {
        FrobeniusBox box(2, 2, conic.field());
        for (std::uint64_t i = 0; i < box.size(); ++i) {
            Monomial a = box.monomial(i);
            Solvability s = decide_solvability(a, conic, box.q(), 10);
            CHECK(s != Solvability::Unstable);
            // once stable at B and B+2, also stable at B+4
            if (s != Solvability::Unstable)
                CHECK(decide_solvability(a, conic, box.q(), 12) == s);
        }
    }
}

TEST_CASE("class keys") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    SUBCASE("determinism and the leading components") {
        ClassKey k1 = class_key(mono({1, 3}), conic, 4, 8);
        ClassKey k2 = class_key(mono({1, 3}), conic, 4, 8);
        CHECK(k1 == k2);
        auto flat = k1.flatten();
        REQUIRE(flat.size() >= 4);
        CHECK(flat[0] == 0); // m31 absent
        CHECK(flat[2] == 1); // m21 present
        CHECK(flat[3] == 3); // m21 = 3
    }
    SUBCASE("distinct thresholds give distinct keys") {
        ClassKey k1 = class_key(mono({1, 3}), conic, 4, 8);  // m21 = 3
        ClassKey k2 = class_key(mono({0, 2}), conic, 4, 8);  // m21 absent
        CHECK_FALSE(k1 == k2);
    }
    SUBCASE("equal keys produce structurally identical systems") {
        for (const char* text : {"x0^2 + x0*x1 + x1^2", "x0 + x1 + x0*x1"}) {
            Trinomial f = parse_trinomial(text, 2);
            FrobeniusBox box(2, 2, f.field());
            std::map<std::vector<std::int64_t>, std::uint64_t> rep;
            for (std::uint64_t i = 0; i < box.size(); ++i) {
                Monomial a = box.monomial(i);
                auto flat = class_key(a, f, box.q(), 6).flatten();
                auto [it, fresh] = rep.emplace(flat, i);
                if (fresh) continue;
                ReducedSystem s1 = build_reduced_system(box.monomial(it->second), f, box.q(), 6);
                ReducedSystem s2 = build_reduced_system(a, f, box.q(), 6);
                CHECK(s1.rows.size() == s2.rows.size());
                CHECK(s1.cols.size() == s2.cols.size());
                std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint32_t>> e1, e2;
                for (const auto& e : s1.matrix.entries) e1.insert({e.row, e.col, e.value});
                for (const auto& e : s2.matrix.entries) e2.insert({e.row, e.col, e.value});
                CHECK(e1 == e2);
            }
        }
    }
}

TEST_CASE("count_unsolvable bookkeeping") {
    Trinomial conic = parse_trinomial("x0^2 + x0*x1 + x1^2", 2);
    ClassTable table = count_unsolvable(conic, 2, 8);
    CHECK(table.box_size == 16);
    CHECK(table.in_via_i + table.in_via_ii + table.no_divisor + table.route_iii == 16);
    CHECK(table.solvable + table.unsolvable + table.unstable == table.route_iii);
    std::uint64_t class_total = 0;
    for (const auto& cls : table.classes) {
        class_total += cls.size;
        CHECK(cls.unsolvable_at.size() == 8);
    }
    CHECK(class_total == table.route_iii);
    CHECK_THROWS_AS(count_unsolvable(conic, 12, 4, 1 << 20), budget_error);
}
