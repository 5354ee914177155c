#include "hk/estimate.hpp"

#include <algorithm>
#include <stdexcept>

namespace hk {

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;
using boost::multiprecision::pow;

EstimateInput to_estimate_input(const HKSeries& s) {
    EstimateInput in;
    in.p = s.p;
    in.m = s.m;
    for (const auto& pt : s.points) in.points.push_back({pt.n, BigInt(pt.hk)});
    return in;
}

MultiplicityEstimate estimate_multiplicity(const EstimateInput& input, std::int64_t d) {
    if (input.points.size() < 3) throw std::invalid_argument("estimator needs at least 3 series points");
    if (d < 0) throw std::invalid_argument("dimension must be >= 0");

    MultiplicityEstimate est;
    est.d = d;
    for (const auto& pt : input.points) {
        BigInt denom = pow(input.p, static_cast<unsigned>(pt.n * d));
        est.values.emplace_back(BigRational(pt.hk, denom));
    }
    est.estimate = est.values.back();

    std::vector<BigRational> diffs;
    for (std::size_t i = 1; i < est.values.size(); ++i)
        diffs.push_back(abs(est.values[i] - est.values[i - 1]));

    const BigRational& d_last = diffs[diffs.size() - 1];
    const BigRational& d_prev = diffs[diffs.size() - 2];
    BigRational ratio = 0;
    if (d_prev != 0) ratio = d_last / d_prev;
    BigRational clamp_hi(9, 10);
    if (ratio > clamp_hi) ratio = clamp_hi;
    if (ratio < 0) ratio = 0;
    est.band = d_last / (BigRational(1) - ratio);
    est.converged = (d_last < d_prev) || (d_last == 0 && d_prev == 0);
    return est;
}

std::vector<std::pair<BigInt, BigInt>> convergents(const BigRational& x, const BigInt& q_max) {
    if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
    std::vector<std::pair<BigInt, BigInt>> out;
    // h_i = a_i h_{i-1} + h_{i-2}, same for k; floor-divide the digits
    BigInt h_mm = 0, h_m = 1, k_mm = 1, k_m = 0;
    BigInt n0 = numerator(x), d0 = denominator(x);
    while (d0 != 0) {
        BigInt a = n0 / d0, r = n0 % d0;
        if (r < 0) {
            a -= 1;
            r += d0;
        }
        BigInt h = a * h_m + h_mm, k = a * k_m + k_mm;
        if (k > q_max) break;
        out.emplace_back(h, k);
        h_mm = h_m;
        h_m = h;
        k_mm = k_m;
        k_m = k;
        n0 = d0;
        d0 = r;
    }
    return out;
}

const char* probe_verdict_name(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::ConsistentWithRational: return "ConsistentWithRational";
        case ProbeVerdict::NoSmallRational: return "NoSmallRational";
        case ProbeVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

RationalityReport rationality_probe(const MultiplicityEstimate& est, const BigInt& q_max, bool force) {
    RationalityReport report;
    for (const auto& [num, den] : convergents(est.estimate, q_max)) {
        BigRational dist = abs(est.estimate - BigRational(num, den));
        if (dist <= est.band) {
            report.candidates.push_back({num, den, dist});
            // simplest consistent rational: least denominator, then closest
            if (!report.best || den < report.best->den ||
                (den == report.best->den && dist < report.best->distance))
                report.best = report.candidates.back();
        }
    }
    if (!report.candidates.empty())
        report.verdict = ProbeVerdict::ConsistentWithRational;
    else if (est.converged || force)
        report.verdict = ProbeVerdict::NoSmallRational;
    else
        report.verdict = ProbeVerdict::Inconclusive;
    return report;
}

std::string rational_decimal_string(const BigRational& r, unsigned digits) {
    BigInt num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt whole = num / den, rem = num % den;
    std::string out = (neg && (whole != 0 || rem != 0)) ? "-" : "";
    out += whole.str();
    if (rem == 0) return out;
    out += ".";
    for (unsigned i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        BigInt digit = rem / den;
        out += digit.str();
        rem %= den;
    }
    return out;
}

} // namespace hk
