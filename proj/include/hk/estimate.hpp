#ifndef HK_ESTIMATE_HPP
#define HK_ESTIMATE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/oracle.hpp"

namespace hk {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct SeriesPoint {
    int n;
    BigInt hk;
};

/// Exact input to the estimator; convertible from an oracle HKSeries.
struct EstimateInput {
    BigInt p;
    std::size_t m = 0; ///< variable count, 0 when unknown
    std::vector<SeriesPoint> points;
};

EstimateInput to_estimate_input(const HKSeries& s);

/// The leading-coefficient extraction: r_n = HK(n)/p^{nd} exactly, the
/// last value as the estimate, and a geometric-tail error band from the
/// observed contraction of successive differences (ratio clamped to 0.9).
struct MultiplicityEstimate {
    std::int64_t d = 0;
    std::vector<BigRational> values;
    BigRational estimate;
    BigRational band;
    bool converged = false;
};

/// Needs at least 3 points. d is the caller's dimension (m - 1 for a
/// hypersurface); it scales the normalization only.
MultiplicityEstimate estimate_multiplicity(const EstimateInput& input, std::int64_t d);

struct RationalCandidate {
    BigInt num;
    BigInt den;
    BigRational distance;
};

enum class ProbeVerdict { ConsistentWithRational, NoSmallRational, Inconclusive };

const char* probe_verdict_name(ProbeVerdict v);

/// Continued-fraction convergents of the estimate with denominator
/// <= q_max that land inside the error band.
struct RationalityReport {
    std::vector<RationalCandidate> candidates;
    std::optional<RationalCandidate> best;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

/// NoSmallRational requires a converged estimate (or `force`); a candidate
/// inside the band always yields ConsistentWithRational.
RationalityReport rationality_probe(const MultiplicityEstimate& est, const BigInt& q_max,
                                    bool force = false);

/// All continued-fraction convergents of x with denominator <= q_max.
std::vector<std::pair<BigInt, BigInt>> convergents(const BigRational& x, const BigInt& q_max);

/// Decimal rendering of an exact rational with the given scale.
std::string rational_decimal_string(const BigRational& r, unsigned digits = 18);

} // namespace hk

#endif
