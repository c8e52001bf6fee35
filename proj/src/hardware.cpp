#include <algorithm>
#include <set>

#include "qact/hardware.hpp"

namespace qact {

using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError("profiles: " + path + ": " + message);
}

std::string indexed(std::size_t i) {
    return "[" + std::to_string(i) + "]";
}

std::string get_string(const ojson& obj, const std::string& path, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path + "." + std::string(key), "missing required key");
    }
    if (!it->is_string()) {
        fail(path + "." + std::string(key), "expected a string");
    }
    return it->get<std::string>();
}

std::int64_t get_int(const ojson& obj, const std::string& path, std::string_view key,
                     std::int64_t min_value) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path + "." + std::string(key), "missing required key");
    }
    if (!it->is_number_integer() || it->is_number_float()) {
        fail(path + "." + std::string(key), "expected an integer");
    }
    std::int64_t n = it->get<std::int64_t>();
    if (n < min_value) {
        fail(path + "." + std::string(key), "must be at least " + std::to_string(min_value));
    }
    return n;
}

bool get_bool(const ojson& obj, const std::string& path, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(path + "." + std::string(key), "missing required key");
    }
    if (!it->is_boolean()) {
        fail(path + "." + std::string(key), "expected a boolean");
    }
    return it->get<bool>();
}

HardwareProfile parse_profile(const ojson& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    static constexpr std::string_view kKnown[] = {
        "name", "num_qubits", "log2_quantum_volume", "native_gates",
        "supports_mid_circuit_control", "cost_per_shot"};
    for (const auto& item : j.items()) {
        if (std::find(std::begin(kKnown), std::end(kKnown), item.key()) == std::end(kKnown)) {
            fail(path, "unknown key \"" + item.key() + "\"");
        }
    }
    HardwareProfile p;
    p.name = get_string(j, path, "name");
    if (p.name.empty()) {
        fail(path + ".name", "must be a non-empty string");
    }
    p.num_qubits = get_int(j, path, "num_qubits", 1);
    p.log2_quantum_volume = get_int(j, path, "log2_quantum_volume", 0);
    auto gates = j.find("native_gates");
    if (gates == j.end()) {
        fail(path + ".native_gates", "missing required key");
    }
    if (!gates->is_array()) {
        fail(path + ".native_gates", "expected an array");
    }
    for (std::size_t i = 0; i < gates->size(); ++i) {
        if (!(*gates)[i].is_string()) {
            fail(path + ".native_gates" + indexed(i), "expected a string");
        }
        p.native_gates.push_back((*gates)[i].get<std::string>());
    }
    p.supports_mid_circuit_control = get_bool(j, path, "supports_mid_circuit_control");
    if (auto it = j.find("cost_per_shot"); it != j.end()) {
        if (!it->is_number()) {
            fail(path + ".cost_per_shot", "expected a number");
        }
        double cost = it->get<double>();
        if (cost < 0.0) {
            fail(path + ".cost_per_shot", "must be nonnegative");
        }
        p.cost_per_shot = cost;
    }
    return p;
}

}  // namespace

std::vector<HardwareProfile> parse_profiles(std::string_view text) {
    ojson root;
    try {
        root = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("profiles: ") + e.what());
    }
    if (!root.is_array()) {
        fail("top level", "expected an array of backend objects");
    }
    std::vector<HardwareProfile> profiles;
    profiles.reserve(root.size());
    std::set<std::string> names;
    for (std::size_t i = 0; i < root.size(); ++i) {
        HardwareProfile p = parse_profile(root[i], indexed(i));
        if (!names.insert(p.name).second) {
            fail(indexed(i) + ".name", "duplicate backend name \"" + p.name + "\"");
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

FitReport match_card(const Card& card, const HardwareProfile& profile,
                     std::optional<std::int64_t> shots) {
    if (!card.usage_details) {
        throw DomainError("card has no usage_details section to match against");
    }
    if (shots && *shots < 1) {
        throw DomainError("shots must be a positive integer");
    }
    const UsageDetails& u = *card.usage_details;

    FitReport report;
    report.backend = profile.name;
    report.checks.push_back({"qubits", u.qubits_required, profile.num_qubits,
                             profile.num_qubits >= u.qubits_required});
    report.checks.push_back({"quantum_volume", u.log2_qv_required, profile.log2_quantum_volume,
                             profile.log2_quantum_volume >= u.log2_qv_required});
    report.checks.push_back({"mid_circuit_control", u.uses_mid_circuit_control ? 1 : 0,
                             profile.supports_mid_circuit_control ? 1 : 0,
                             !u.uses_mid_circuit_control || profile.supports_mid_circuit_control});
    report.fits = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const Check& c) { return c.passed; });
    if (shots) {
        if (profile.cost_per_shot) {
            report.estimated_cost = *profile.cost_per_shot * static_cast<double>(*shots);
        } else {
            report.notes.push_back("no cost estimate: \"" + profile.name +
                                   "\" does not publish cost_per_shot");
        }
    }
    return report;
}

std::vector<FitReport> rank_backends(const Card& card,
                                     const std::vector<HardwareProfile>& profiles,
                                     std::optional<std::int64_t> shots) {
    if (profiles.empty()) {
        throw DomainError("no backend profiles to rank");
    }
    std::vector<FitReport> reports;
    reports.reserve(profiles.size());
    for (const HardwareProfile& p : profiles) {
        reports.push_back(match_card(card, p, shots));
    }
    std::sort(reports.begin(), reports.end(), [](const FitReport& a, const FitReport& b) {
        if (a.fits != b.fits) {
            return a.fits;
        }
        if (a.estimated_cost.has_value() != b.estimated_cost.has_value()) {
            return a.estimated_cost.has_value();
        }
        if (a.estimated_cost && b.estimated_cost && *a.estimated_cost != *b.estimated_cost) {
            return *a.estimated_cost < *b.estimated_cost;
        }
        return a.backend < b.backend;
    });
    return reports;
}

nlohmann::ordered_json fit_reports_to_json(const std::vector<FitReport>& reports) {
    ojson arr = ojson::array();
    for (const FitReport& r : reports) {
        ojson entry;
        entry["backend"] = r.backend;
        entry["fits"] = r.fits;
        entry["checks"] = ojson::array();
        for (const Check& c : r.checks) {
            ojson check;
            check["name"] = c.name;
            if (c.name == "mid_circuit_control") {
                check["required"] = c.required != 0;
                check["available"] = c.available != 0;
            } else {
                check["required"] = c.required;
                check["available"] = c.available;
            }
            check["pass"] = c.passed;
            entry["checks"].push_back(std::move(check));
        }
        entry["notes"] = r.notes;
        if (r.estimated_cost) {
            entry["estimated_cost"] = *r.estimated_cost;
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

}  // namespace qact
