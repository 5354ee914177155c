#include "hk/io.hpp"

#include <sstream>

namespace hk {

using nlohmann::json;

json series_to_json(const HKSeries& s) {
    json j;
    j["p"] = s.p;
    j["m"] = s.m;
    j["poly"] = s.poly;
    j["points"] = json::array();
    for (const auto& pt : s.points)
        j["points"].push_back({{"n", pt.n}, {"q", std::to_string(pt.q)}, {"hk", std::to_string(pt.hk)}});
    j["truncated"] = s.truncated;
    return j;
}

std::string series_to_csv(const HKSeries& s) {
    std::ostringstream out;
    out << "n,q,hk\n";
    for (const auto& pt : s.points) out << pt.n << "," << pt.q << "," << pt.hk << "\n";
    return out.str();
}

EstimateInput series_from_json(const std::string& text) {
    json j = json::parse(text);
    EstimateInput in;
    auto big = [](const json& v) -> BigInt {
        if (v.is_string()) return BigInt(v.get<std::string>());
        return BigInt(v.get<std::uint64_t>());
    };
    in.p = big(j.at("p"));
    in.m = j.value("m", std::size_t{0});
    for (const auto& pt : j.at("points"))
        in.points.push_back({pt.at("n").get<int>(), big(pt.at("hk"))});
    return in;
}

std::vector<std::pair<Monomial, Membership>> classify_box(const Trinomial& f, int n, int depth,
                                                          std::uint64_t budget) {
    FrobeniusBox box(f.vars(), n, f.field());
    if (box.size() > budget)
        throw budget_error("box of " + std::to_string(box.size()) + " basis monomials exceeds budget " +
                           std::to_string(budget));
    std::vector<std::pair<Monomial, Membership>> out;
    out.reserve(box.size());
    for (std::uint64_t i = 0; i < box.size(); ++i) {
        Monomial a = box.monomial(i);
        out.emplace_back(a, classify_monomial(a, f, box.q(), depth));
    }
    return out;
}

std::string classify_to_csv(const std::vector<std::pair<Monomial, Membership>>& verdicts) {
    std::ostringstream out;
    out << "monomial,verdict,witness\n";
    for (const auto& [mono, mem] : verdicts) {
        out << monomial_to_string(mono) << "," << verdict_name(mem.verdict) << ",";
        if (mem.witness_m) out << "M=" << *mem.witness_m;
        out << "\n";
    }
    return out.str();
}

json estimate_report_json(const EstimateInput& input, const MultiplicityEstimate& est,
                          const RationalityReport& report, const BigInt& q_max) {
    json j;
    j["p"] = input.p.str();
    j["d"] = est.d;
    j["points"] = input.points.size();
    j["r_values"] = json::array();
    for (const auto& r : est.values) j["r_values"].push_back(BigRational(r).str());
    j["estimate"] = est.estimate.str();
    j["estimate_decimal"] = rational_decimal_string(est.estimate);
    j["band"] = est.band.str();
    j["band_decimal"] = rational_decimal_string(est.band);
    j["converged"] = est.converged;
    j["q_max"] = q_max.str();
    j["candidates"] = json::array();
    for (const auto& c : report.candidates)
        j["candidates"].push_back({{"num", c.num.str()},
                                   {"den", c.den.str()},
                                   {"distance", c.distance.str()},
                                   {"distance_decimal", rational_decimal_string(c.distance)}});
    if (report.best)
        j["best"] = {{"num", report.best->num.str()}, {"den", report.best->den.str()}};
    else
        j["best"] = nullptr;
    j["verdict"] = probe_verdict_name(report.verdict);
    return j;
}

json analyze_json(const Trinomial& f, int n, const ClassTable& table) {
    json j;
    j["poly"] = f.to_string();
    j["p"] = f.field().p();
    j["n"] = n;
    j["box"] = std::to_string(table.box_size);
    j["bound"] = table.bound;

    json totals;
    totals["in_via_i"] = std::to_string(table.in_via_i);
    totals["in_via_ii"] = std::to_string(table.in_via_ii);
    totals["no_divisor"] = std::to_string(table.no_divisor);
    totals["route_iii"] = std::to_string(table.route_iii);
    totals["solvable"] = std::to_string(table.solvable);
    totals["unsolvable"] = std::to_string(table.unsolvable);
    totals["unstable"] = std::to_string(table.unstable);
    totals["predicted_colength"] = std::to_string(table.no_divisor + table.unsolvable);
    totals["classes"] = table.classes.size();
    j["totals"] = totals;

    // cumulative unsolvable counts per truncation level
    json seq = json::array();
    for (std::int64_t t = 1; t <= table.bound; ++t) {
        std::uint64_t count = 0;
        for (const auto& cls : table.classes)
            if (cls.unsolvable_at[static_cast<std::size_t>(t - 1)]) count += cls.size;
        seq.push_back({{"m", t},
                       {"unsolvable", std::to_string(count)},
                       {"route_iii", std::to_string(table.route_iii)}});
    }
    j["sequence"] = seq;

    json classes = json::array();
    for (const auto& cls : table.classes) {
        json c;
        c["representative"] = monomial_to_string(cls.representative);
        c["size"] = std::to_string(cls.size);
        c["verdict"] = solvability_name(cls.verdict);
        json key;
        key["m31"] = cls.key.m31 ? json(*cls.key.m31) : json(nullptr);
        key["m21"] = cls.key.m21 ? json(*cls.key.m21) : json(nullptr);
        auto ranges = [](const std::vector<IntInterval>& v) {
            json arr = json::array();
            for (std::size_t m = 0; m < v.size(); ++m)
                if (!v[m].empty()) arr.push_back({static_cast<std::int64_t>(m), v[m].lo, v[m].hi});
            return arr;
        };
        key["ranges31"] = ranges(cls.key.high31);
        key["ranges21"] = ranges(cls.key.high21);
        c["key"] = key;
        json seq_cls = json::array();
        for (bool u : cls.unsolvable_at) seq_cls.push_back(u ? 1 : 0);
        c["sequence"] = seq_cls;
        classes.push_back(c);
    }
    j["classes"] = classes;
    return j;
}

} // namespace hk
