#ifndef HK_IO_HPP
#define HK_IO_HPP

#include <json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "hk/estimate.hpp"
#include "hk/mutation.hpp"
#include "hk/oracle.hpp"
#include "hk/reduced.hpp"

namespace hk {

/// Exact integers cross the formats as decimal strings.
nlohmann::json series_to_json(const HKSeries& s);
std::string series_to_csv(const HKSeries& s);
EstimateInput series_from_json(const std::string& text);

/// classify over every basis monomial of the box.
std::vector<std::pair<Monomial, Membership>> classify_box(const Trinomial& f, int n, int depth,
                                                          std::uint64_t budget = kDefaultBudget);
std::string classify_to_csv(const std::vector<std::pair<Monomial, Membership>>& verdicts);

nlohmann::json estimate_report_json(const EstimateInput& input, const MultiplicityEstimate& est,
                                    const RationalityReport& report, const BigInt& q_max);

nlohmann::json analyze_json(const Trinomial& f, int n, const ClassTable& table);

} // namespace hk

#endif
