#include "pa/io.hpp"

#include <fstream>

namespace pa {

using nlohmann::json;

DistributionFile parse_distribution(const json& j, const std::string& origin) {
    auto fail = [&](const std::string& what) -> void {
        throw DomainError(origin + ": " + what);
    };
    if (!j.is_object()) fail("top level must be a JSON object");
    for (const char* field : {"alphabetA", "alphabetE", "mass"})
        if (!j.contains(field)) fail(std::string("missing field '") + field + "'");
    if (!j["alphabetA"].is_array() || j["alphabetA"].empty()) fail("'alphabetA' must be a nonempty array");
    if (!j["alphabetE"].is_array() || j["alphabetE"].empty()) fail("'alphabetE' must be a nonempty array");
    if (!j["mass"].is_array()) fail("'mass' must be an array");

    DistributionFile out{{}, {}, JointSubDistribution(1, 1, {0.0})};
    for (const auto& v : j["alphabetA"]) out.alphabet_a.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    for (const auto& v : j["alphabetE"]) out.alphabet_e.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    const std::size_t na = out.alphabet_a.size(), ne = out.alphabet_e.size();
    if (j["mass"].size() != na * ne)
        fail("'mass' must have " + std::to_string(na * ne) + " row-major entries, got " +
             std::to_string(j["mass"].size()));
    std::vector<double> mass;
    mass.reserve(na * ne);
    for (std::size_t i = 0; i < j["mass"].size(); ++i) {
        const auto& v = j["mass"][i];
        if (!v.is_number()) fail("'mass[" + std::to_string(i) + "]' is not a number");
        double d = v.get<double>();
        if (d < 0.0) fail("'mass[" + std::to_string(i) + "]' is negative");
        mass.push_back(d);
    }
    try {
        out.dist = JointSubDistribution(na, ne, std::move(mass));
    } catch (const Error& e) {
        fail(e.what());
    }
    if (j.contains("normalized") && j["normalized"].is_boolean() && j["normalized"].get<bool>() &&
        !out.dist.is_normalized())
        fail("'normalized' is true but the mass does not sum to one");
    return out;
}

DistributionFile load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError(path + ": cannot open");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError(path + ": JSON parse error: " + e.what());
    }
    return parse_distribution(j, path);
}

json distribution_to_json(const JointSubDistribution& p, const std::vector<std::string>& labels_a,
                          const std::vector<std::string>& labels_e) {
    json j;
    json la = json::array(), le = json::array();
    for (std::size_t a = 0; a < p.size_a(); ++a)
        la.push_back(a < labels_a.size() ? labels_a[a] : std::to_string(a));
    for (std::size_t e = 0; e < p.size_e(); ++e)
        le.push_back(e < labels_e.size() ? labels_e[e] : std::to_string(e));
    j["alphabetA"] = la;
    j["alphabetE"] = le;
    j["mass"] = p.data();
    j["normalized"] = p.is_normalized();
    return j;
}

json bound_report_to_json(const BoundReport& r) {
    json j;
    j["method"] = r.method;
    j["criterion"] = r.criterion;
    j["M"] = r.m;
    j["eps"] = r.eps;
    j["iid_n"] = r.iid_n;
    j["value"] = r.value;
    if (std::isfinite(r.s_star)) j["s"] = r.s_star;
    if (std::isfinite(r.r_prime)) j["Rprime"] = r.r_prime;
    if (std::isfinite(r.c)) j["c"] = r.c;
    if (!r.q_tag.empty()) j["Q_E"] = r.q_tag;
    if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
    j["boundary_hit"] = r.boundary_hit;
    return j;
}

json family_audit_to_json(const FamilyAudit& a) {
    json j;
    j["kind"] = a.kind;
    j["q"] = a.q;
    j["n"] = a.n;
    j["m"] = a.m;
    j["member_count"] = a.member_count;
    j["epsilon_universal"] = a.epsilon_universal;
    j["epsilon_dual"] = a.epsilon_dual;
    j["epsilon_dual_effective"] = a.epsilon_dual_effective;
    j["delta_bias"] = a.delta_bias;
    j["t_min"] = a.t_min;
    j["t_max"] = a.t_max;
    j["surjective_fraction"] = a.surjective_fraction;
    return j;
}

}  // namespace pa
