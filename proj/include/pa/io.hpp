#pragma once

#include <string>

#include <json.hpp>

#include "pa/asymptotic.hpp"
#include "pa/bounds.hpp"
#include "pa/dist.hpp"
#include "pa/hash.hpp"

namespace pa {

/// On-disk distribution format:
/// { "alphabetA": [labels], "alphabetE": [labels],
///   "mass": [row-major doubles], "normalized": bool }.
/// Parse failures throw DomainError with a field-level diagnostic.
struct DistributionFile {
    std::vector<std::string> alphabet_a;
    std::vector<std::string> alphabet_e;
    JointSubDistribution dist;
};

DistributionFile load_distribution(const std::string& path);
DistributionFile parse_distribution(const nlohmann::json& j, const std::string& origin);
nlohmann::json distribution_to_json(const JointSubDistribution& p,
                                    const std::vector<std::string>& labels_a = {},
                                    const std::vector<std::string>& labels_e = {});

nlohmann::json bound_report_to_json(const BoundReport& r);
nlohmann::json family_audit_to_json(const FamilyAudit& a);

}  // namespace pa
