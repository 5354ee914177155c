#include "hk/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace hk {

Monomial::Monomial(Exponents exps) : e(std::move(exps)) {
    for (auto x : e)
        if (x < 0) throw std::invalid_argument("monomial exponent must be nonnegative");
}

std::int64_t Monomial::degree() const {
    return std::accumulate(e.begin(), e.end(), std::int64_t{0});
}

bool Monomial::divides(const Monomial& other) const {
    if (e.size() != other.e.size()) throw std::invalid_argument("variable count mismatch");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > other.e[i]) return false;
    return true;
}

bool LaurentMonomial::nonnegative() const {
    return std::all_of(e.begin(), e.end(), [](std::int64_t x) { return x >= 0; });
}

Ordering deglex_compare(const Monomial& a, const Monomial& b) {
    if (a.e.size() != b.e.size()) throw std::invalid_argument("deglex: variable count mismatch");
    std::int64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
    for (std::size_t i = a.e.size(); i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

Trinomial::Trinomial(PrimeField field, Term a, Term b, Term c) : field_(field) {
    Term* ts[3] = {&a, &b, &c};
    m_ = a.mon.vars();
    for (auto* t : ts) {
        if (t->mon.vars() != m_) throw std::invalid_argument("trinomial: inconsistent variable count");
        if (t->coeff % field_.p() == 0) throw std::invalid_argument("trinomial: zero coefficient");
        if (t->mon.is_constant()) throw std::invalid_argument("trinomial: constant term not allowed");
    }
    std::sort(ts, ts + 3, [](const Term* x, const Term* y) { return deglex_less(x->mon, y->mon); });
    if (ts[0]->mon == ts[1]->mon || ts[1]->mon == ts[2]->mon)
        throw std::invalid_argument("trinomial: terms must have three distinct monomials");
    t1_ = *ts[0];
    t2_ = *ts[1];
    t3_ = *ts[2];
}

const Term& Trinomial::term(int i) const {
    switch (i) {
        case 1: return t1_;
        case 2: return t2_;
        case 3: return t3_;
        default: throw std::out_of_range("trinomial term index");
    }
}

std::int64_t Trinomial::max_degree() const {
    return std::max({t1_.mon.degree(), t2_.mon.degree(), t3_.mon.degree()});
}

namespace {

struct ParsedTerm {
    std::int64_t coeff = 1;
    std::map<std::size_t, std::int64_t> exps;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::int64_t integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        std::int64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (std::int64_t{1} << 50)) fail("integer literal too large");
            ++pos_;
        }
        return neg ? -v : v;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + why);
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

ParsedTerm parse_term(Lexer& lx) {
    ParsedTerm t;
    bool saw_factor = false;
    bool neg = false;
    if (lx.peek() == '-') {
        lx.expect('-');
        neg = true;
    }
    for (;;) {
        char c = lx.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.coeff *= lx.integer();
            saw_factor = true;
        } else if (c == 'x') {
            lx.expect('x');
            std::int64_t idx = lx.integer();
            if (idx < 0) lx.fail("negative variable index");
            std::int64_t exp = 1;
            if (lx.accept('^')) {
                exp = lx.integer();
                if (exp < 0) lx.fail("negative exponent");
            }
            t.exps[static_cast<std::size_t>(idx)] += exp;
            saw_factor = true;
        } else {
            lx.fail("expected coefficient or variable");
        }
        if (!lx.accept('*')) break;
    }
    if (!saw_factor) lx.fail("empty term");
    if (neg) t.coeff = -t.coeff;
    return t;
}

} // namespace

Trinomial parse_trinomial(const std::string& text, std::uint64_t p) {
    PrimeField field(p);
    Lexer lx(text);
    std::vector<ParsedTerm> raw;
    raw.push_back(parse_term(lx));
    while (lx.accept('+')) raw.push_back(parse_term(lx));
    if (!lx.eof()) lx.fail("trailing input");

    std::size_t m = 0;
    for (const auto& t : raw)
        for (const auto& [idx, exp] : t.exps)
            if (exp > 0) m = std::max(m, idx + 1);

    // merge like monomials mod p
    std::map<Exponents, std::uint32_t> merged;
    for (const auto& t : raw) {
        Exponents e(m, 0);
        for (const auto& [idx, exp] : t.exps) e[idx] += exp;
        std::uint32_t c = field.reduce(t.coeff);
        if (c == 0)
            throw std::invalid_argument("coefficient is divisible by " + std::to_string(p) +
                                        " in term of \"" + text + "\"");
        auto [it, fresh] = merged.emplace(std::move(e), c);
        if (!fresh) it->second = field.add(it->second, c);
    }
    for (auto it = merged.begin(); it != merged.end();) {
        if (it->second == 0)
            it = merged.erase(it);
        else
            ++it;
    }
    if (merged.size() != 3)
        throw std::invalid_argument("expected exactly 3 terms, got " + std::to_string(merged.size()) +
                                    " after reduction mod " + std::to_string(p));

    std::vector<Term> terms;
    for (auto& [e, c] : merged) {
        Term t;
        t.coeff = c;
        t.mon = Monomial(e);
        terms.push_back(std::move(t));
    }
    return Trinomial(field, terms[0], terms[1], terms[2]);
}

std::string monomial_to_string(const Monomial& m) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!first) out << "*";
        out << "x" << i;
        if (m.e[i] != 1) out << "^" << m.e[i];
        first = false;
    }
    if (first) out << "1";
    return out.str();
}

std::string laurent_to_string(const LaurentMonomial& m) {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        if (m.e[i] == 0) continue;
        if (!first) out << "*";
        out << "x" << i;
        if (m.e[i] != 1) out << "^" << m.e[i];
        first = false;
    }
    if (first) out << "1";
    return out.str();
}

std::string Trinomial::to_string() const {
    std::ostringstream out;
    for (int i = 1; i <= 3; ++i) {
        if (i > 1) out << " + ";
        if (coeff(i) != 1) out << coeff(i) << "*";
        out << monomial_to_string(mon(i));
    }
    return out.str();
}

VariableClassification classify_variables(const Trinomial& f) {
    VariableClassification vc;
    std::size_t m = f.vars();
    const Monomial&m1 = f.mon(1), &m2 = f.mon(2), &m3 = f.mon(3);
    std::vector<std::pair<std::int64_t, std::size_t>> extras; // (deg_f, index)
    for (std::size_t v = 0; v < m; ++v) {
        std::int64_t d1 = m1.e[v], d2 = m2.e[v], d3 = m3.e[v];
        if (d1 == 0 && d2 == 0 && d3 == 0) continue; // not in the support of f
        if (d3 > 0 && d1 == 0 && d2 == 0) {
            extras.emplace_back(d3, v);
            continue;
        }
        std::int64_t diff = d2 - d1;
        if (diff < 0)
            vc.negative.push_back(v);
        else if (diff == 0)
            vc.zero.push_back(v);
        else
            vc.positive.push_back(v);
    }
    // E_q .. E_1 with deg_f(E_q) >= ... >= deg_f(E_1)
    std::stable_sort(extras.begin(), extras.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [deg, v] : extras) {
        (void)deg;
        vc.extra.push_back(v);
    }
    vc.order = vc.extra;
    vc.order.insert(vc.order.end(), vc.negative.begin(), vc.negative.end());
    vc.order.insert(vc.order.end(), vc.zero.begin(), vc.zero.end());
    vc.order.insert(vc.order.end(), vc.positive.begin(), vc.positive.end());
    return vc;
}

LaurentMonomial laurent_apply(const Monomial& a, const Trinomial& f,
                              std::int64_t i, std::int64_t j, std::int64_t k) {
    if (a.vars() != f.vars()) throw std::invalid_argument("laurent_apply: variable count mismatch");
    Exponents e = a.e;
    const std::int64_t c[3] = {i, j, k};
    for (int t = 1; t <= 3; ++t) {
        const auto& mon = f.mon(t).e;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += c[t - 1] * mon[v];
    }
    return LaurentMonomial(std::move(e));
}

} // namespace hk
