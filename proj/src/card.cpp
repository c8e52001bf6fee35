#include "qact/card.hpp"

#include <algorithm>
#include <array>
#include <regex>
#include <set>
#include <utility>

#include <json.hpp>

namespace qact {

using ojson = nlohmann::ordered_json;

namespace {

struct SectionRow {
    Section section;
    std::string_view key;
    std::string_view title;
    bool t;
    bool d;
    bool o;
};

// Element rows in card order with their recipients.
constexpr std::array<SectionRow, kSectionCount> kRows{{
    {Section::overview, "overview", "Overview", true, true, true},
    {Section::intended_use, "intended_use", "Intended use", true, false, false},
    {Section::usage_details, "usage_details", "Usage details", false, true, true},
    {Section::performance_metrics, "performance_metrics", "Performance metrics", true, false, true},
    {Section::limitations, "limitations", "Limitations", true, true, false},
    {Section::references, "references", "References", true, true, false},
    {Section::caveats, "caveats", "Caveats", false, true, false},
}};

const SectionRow& row_of(Section s) {
    return kRows[static_cast<std::size_t>(s)];
}

bool targets(const SectionRow& row, Audience a) {
    switch (a) {
        case Audience::T: return row.t;
        case Audience::D: return row.d;
        case Audience::O: return row.o;
    }
    return false;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError("card: " + path + ": " + message);
}

std::string join_path(const std::string& base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

std::string indexed(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

void require_known_keys(const ojson& obj, const std::string& path,
                        std::initializer_list<std::string_view> known) {
    for (const auto& item : obj.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            fail(path.empty() ? "top level" : path, "unknown key \"" + item.key() + "\"");
        }
    }
}

const ojson& require_key(const ojson& obj, const std::string& path, std::string_view key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(join_path(path, key), "missing required key");
    }
    return *it;
}

const ojson& require_object(const ojson& value, const std::string& path) {
    if (!value.is_object()) {
        fail(path, "expected an object");
    }
    return value;
}

const ojson& require_array(const ojson& value, const std::string& path) {
    if (!value.is_array()) {
        fail(path, "expected an array");
    }
    return value;
}

std::string get_string(const ojson& obj, const std::string& path, std::string_view key) {
    const ojson& v = require_key(obj, path, key);
    if (!v.is_string()) {
        fail(join_path(path, key), "expected a string");
    }
    return v.get<std::string>();
}

std::int64_t get_nonneg_int(const ojson& obj, const std::string& path, std::string_view key) {
    const ojson& v = require_key(obj, path, key);
    if (!v.is_number_integer() || v.is_number_float()) {
        fail(join_path(path, key), "expected a nonnegative integer");
    }
    std::int64_t n = v.get<std::int64_t>();
    if (n < 0) {
        fail(join_path(path, key), "expected a nonnegative integer");
    }
    return n;
}

bool get_bool(const ojson& obj, const std::string& path, std::string_view key) {
    const ojson& v = require_key(obj, path, key);
    if (!v.is_boolean()) {
        fail(join_path(path, key), "expected a boolean");
    }
    return v.get<bool>();
}

Overview parse_overview(const ojson& j, const std::string& path) {
    require_object(j, path);
    require_known_keys(j, path, {"name", "version", "provider", "maintainer",
                                 "description", "approach", "complexity"});
    Overview o;
    o.name = get_string(j, path, "name");
    o.version = get_string(j, path, "version");
    o.provider = get_string(j, path, "provider");
    o.maintainer = get_string(j, path, "maintainer");
    o.description = get_string(j, path, "description");
    o.approach = get_string(j, path, "approach");
    o.complexity = get_string(j, path, "complexity");
    return o;
}

std::vector<std::string> parse_string_list(const ojson& j, const std::string& path) {
    require_array(j, path);
    std::vector<std::string> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) {
            fail(indexed(path, i), "expected a string");
        }
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

IntendedUse parse_intended_use(const ojson& j, const std::string& path) {
    require_object(j, path);
    require_known_keys(j, path, {"tasks", "scenarios"});
    IntendedUse u;
    u.tasks = parse_string_list(require_key(j, path, "tasks"), join_path(path, "tasks"));
    u.scenarios = parse_string_list(require_key(j, path, "scenarios"), join_path(path, "scenarios"));
    return u;
}

std::vector<IoSpec> parse_io_list(const ojson& j, const std::string& path) {
    require_array(j, path);
    std::vector<IoSpec> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = indexed(path, i);
        require_object(j[i], p);
        require_known_keys(j[i], p, {"name", "type", "description"});
        IoSpec io;
        io.name = get_string(j[i], p, "name");
        io.type = get_string(j[i], p, "type");
        io.description = get_string(j[i], p, "description");
        out.push_back(std::move(io));
    }
    return out;
}

UsageDetails parse_usage_details(const ojson& j, const std::string& path) {
    require_object(j, path);
    require_known_keys(j, path, {"inputs", "outputs", "qubits_required", "circuit_depth",
                                 "log2_qv_required", "uses_mid_circuit_control", "circuit_ref"});
    UsageDetails u;
    u.inputs = parse_io_list(require_key(j, path, "inputs"), join_path(path, "inputs"));
    u.outputs = parse_io_list(require_key(j, path, "outputs"), join_path(path, "outputs"));
    u.qubits_required = get_nonneg_int(j, path, "qubits_required");
    u.circuit_depth = get_nonneg_int(j, path, "circuit_depth");
    u.log2_qv_required = get_nonneg_int(j, path, "log2_qv_required");
    u.uses_mid_circuit_control = get_bool(j, path, "uses_mid_circuit_control");
    if (auto it = j.find("circuit_ref"); it != j.end()) {
        const std::string p = join_path(path, "circuit_ref");
        require_object(*it, p);
        require_known_keys(*it, p, {"path", "sha256"});
        CircuitRef ref;
        ref.path = get_string(*it, p, "path");
        ref.sha256 = get_string(*it, p, "sha256");
        u.circuit_ref = std::move(ref);
    }
    return u;
}

std::vector<MetricSpec> parse_metrics(const ojson& j, const std::string& path) {
    require_array(j, path);
    std::vector<MetricSpec> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = indexed(path, i);
        require_object(j[i], p);
        require_known_keys(j[i], p, {"name", "description", "threshold", "direction"});
        MetricSpec m;
        m.name = get_string(j[i], p, "name");
        m.description = get_string(j[i], p, "description");
        if (auto it = j[i].find("threshold"); it != j[i].end()) {
            if (!it->is_number()) {
                fail(join_path(p, "threshold"), "expected a number");
            }
            m.threshold = it->get<double>();
        }
        const std::string dir = get_string(j[i], p, "direction");
        if (dir == metric_direction_key(MetricDirection::higher_is_better)) {
            m.direction = MetricDirection::higher_is_better;
        } else if (dir == metric_direction_key(MetricDirection::lower_is_better)) {
            m.direction = MetricDirection::lower_is_better;
        } else {
            fail(join_path(p, "direction"),
                 "expected \"higher_is_better\" or \"lower_is_better\"");
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Limitation> parse_limitations(const ojson& j, const std::string& path) {
    require_array(j, path);
    std::vector<Limitation> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = indexed(path, i);
        require_object(j[i], p);
        require_known_keys(j[i], p, {"scenario", "failure_mode"});
        Limitation l;
        l.scenario = get_string(j[i], p, "scenario");
        l.failure_mode = get_string(j[i], p, "failure_mode");
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<Reference> parse_references(const ojson& j, const std::string& path) {
    require_array(j, path);
    std::vector<Reference> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = indexed(path, i);
        require_object(j[i], p);
        require_known_keys(j[i], p, {"citation", "url"});
        Reference r;
        r.citation = get_string(j[i], p, "citation");
        if (j[i].contains("url")) {
            r.url = get_string(j[i], p, "url");
        }
        out.push_back(std::move(r));
    }
    return out;
}

ojson io_list_to_json(const std::vector<IoSpec>& ios) {
    ojson arr = ojson::array();
    for (const IoSpec& io : ios) {
        arr.push_back(ojson{{"name", io.name}, {"type", io.type}, {"description", io.description}});
    }
    return arr;
}

bool is_lower_hex_sha256(const std::string& s) {
    if (s.size() != 64) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
}

bool is_semver(const std::string& s) {
    static const std::regex re(R"(^(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)\.(0|[1-9][0-9]*)$)");
    return std::regex_match(s, re);
}

void require_non_empty(std::vector<FieldError>& errors, const std::string& path,
                       const std::string& value) {
    if (value.empty()) {
        errors.push_back({path, "must be a non-empty string"});
    }
}

}  // namespace

const std::vector<Section>& all_sections() {
    static const std::vector<Section> sections = [] {
        std::vector<Section> out;
        for (const SectionRow& row : kRows) {
            out.push_back(row.section);
        }
        return out;
    }();
    return sections;
}

std::string_view section_key(Section s) {
    return row_of(s).key;
}

std::string_view section_title(Section s) {
    return row_of(s).title;
}

std::string_view audience_key(Audience a) {
    switch (a) {
        case Audience::T: return "T";
        case Audience::D: return "D";
        case Audience::O: return "O";
    }
    return "";
}

std::optional<Audience> audience_from_key(std::string_view key) {
    if (key == "T") return Audience::T;
    if (key == "D") return Audience::D;
    if (key == "O") return Audience::O;
    return std::nullopt;
}

std::string_view metric_direction_key(MetricDirection d) {
    return d == MetricDirection::higher_is_better ? "higher_is_better" : "lower_is_better";
}

bool Card::has_section(Section s) const {
    switch (s) {
        case Section::overview: return true;
        case Section::intended_use: return intended_use.has_value();
        case Section::usage_details: return usage_details.has_value();
        case Section::performance_metrics: return performance_metrics.has_value();
        case Section::limitations: return limitations.has_value();
        case Section::references: return references.has_value();
        case Section::caveats: return caveats.has_value();
    }
    return false;
}

std::vector<Section> audience_sections(Audience a) {
    std::vector<Section> out;
    for (const SectionRow& row : kRows) {
        if (targets(row, a)) {
            out.push_back(row.section);
        }
    }
    return out;
}

Card parse_card(std::string_view text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("card: ") + e.what());
    }
    if (!j.is_object()) {
        fail("top level", "expected an object");
    }
    require_known_keys(j, "", {"qac_version", "overview", "intended_use", "usage_details",
                               "performance_metrics", "limitations", "references", "caveats"});

    Card c;
    c.qac_version = get_string(j, "", "qac_version");
    if (c.qac_version != kQacVersion) {
        fail("qac_version", "unsupported version \"" + c.qac_version + "\", expected \"" +
                                std::string(kQacVersion) + "\"");
    }
    c.overview = parse_overview(require_key(j, "", "overview"), "overview");
    if (auto it = j.find("intended_use"); it != j.end()) {
        c.intended_use = parse_intended_use(*it, "intended_use");
    }
    if (auto it = j.find("usage_details"); it != j.end()) {
        c.usage_details = parse_usage_details(*it, "usage_details");
    }
    if (auto it = j.find("performance_metrics"); it != j.end()) {
        c.performance_metrics = parse_metrics(*it, "performance_metrics");
    }
    if (auto it = j.find("limitations"); it != j.end()) {
        c.limitations = parse_limitations(*it, "limitations");
    }
    if (auto it = j.find("references"); it != j.end()) {
        c.references = parse_references(*it, "references");
    }
    if (auto it = j.find("caveats"); it != j.end()) {
        c.caveats = parse_string_list(*it, "caveats");
    }
    return c;
}

std::string serialize_card(const Card& card) {
    ojson j;
    j["qac_version"] = card.qac_version;
    j["overview"] = ojson{
        {"name", card.overview.name},
        {"version", card.overview.version},
        {"provider", card.overview.provider},
        {"maintainer", card.overview.maintainer},
        {"description", card.overview.description},
        {"approach", card.overview.approach},
        {"complexity", card.overview.complexity},
    };
    if (card.intended_use) {
        j["intended_use"] = ojson{
            {"tasks", card.intended_use->tasks},
            {"scenarios", card.intended_use->scenarios},
        };
    }
    if (card.usage_details) {
        const UsageDetails& u = *card.usage_details;
        ojson details;
        details["inputs"] = io_list_to_json(u.inputs);
        details["outputs"] = io_list_to_json(u.outputs);
        details["qubits_required"] = u.qubits_required;
        details["circuit_depth"] = u.circuit_depth;
        details["log2_qv_required"] = u.log2_qv_required;
        details["uses_mid_circuit_control"] = u.uses_mid_circuit_control;
        if (u.circuit_ref) {
            details["circuit_ref"] = ojson{{"path", u.circuit_ref->path},
                                           {"sha256", u.circuit_ref->sha256}};
        }
        j["usage_details"] = std::move(details);
    }
    if (card.performance_metrics) {
        ojson arr = ojson::array();
        for (const MetricSpec& m : *card.performance_metrics) {
            ojson entry;
            entry["name"] = m.name;
            entry["description"] = m.description;
            if (m.threshold) {
                entry["threshold"] = *m.threshold;
            }
            entry["direction"] = std::string(metric_direction_key(m.direction));
            arr.push_back(std::move(entry));
        }
        j["performance_metrics"] = std::move(arr);
    }
    if (card.limitations) {
        ojson arr = ojson::array();
        for (const Limitation& l : *card.limitations) {
            arr.push_back(ojson{{"scenario", l.scenario}, {"failure_mode", l.failure_mode}});
        }
        j["limitations"] = std::move(arr);
    }
    if (card.references) {
        ojson arr = ojson::array();
        for (const Reference& r : *card.references) {
            ojson entry;
            entry["citation"] = r.citation;
            if (r.url) {
                entry["url"] = *r.url;
            }
            arr.push_back(std::move(entry));
        }
        j["references"] = std::move(arr);
    }
    if (card.caveats) {
        j["caveats"] = *card.caveats;
    }
    return j.dump(2) + "\n";
}

ValidationReport validate_card(const Card& card, std::optional<Audience> audience) {
    ValidationReport report;

    const std::vector<Section> required =
        audience ? audience_sections(*audience) : all_sections();
    for (Section s : required) {
        if (!card.has_section(s)) {
            report.missing_sections.emplace_back(section_key(s));
        }
    }

    auto& errors = report.field_errors;

    require_non_empty(errors, "overview.name", card.overview.name);
    if (!is_semver(card.overview.version)) {
        errors.push_back({"overview.version",
                          "must match MAJOR.MINOR.PATCH with nonnegative integers"});
    }

    if (card.intended_use) {
        const IntendedUse& u = *card.intended_use;
        if (u.tasks.empty()) {
            errors.push_back({"intended_use.tasks", "must be a non-empty list"});
        }
        if (u.scenarios.empty()) {
            errors.push_back({"intended_use.scenarios", "must be a non-empty list"});
        }
        for (std::size_t i = 0; i < u.tasks.size(); ++i) {
            require_non_empty(errors, indexed("intended_use.tasks", i), u.tasks[i]);
        }
        for (std::size_t i = 0; i < u.scenarios.size(); ++i) {
            require_non_empty(errors, indexed("intended_use.scenarios", i), u.scenarios[i]);
        }
    }

    if (card.usage_details) {
        const UsageDetails& u = *card.usage_details;
        if (u.qubits_required < 1) {
            errors.push_back({"usage_details.qubits_required", "must be at least 1"});
        }
        for (std::size_t i = 0; i < u.inputs.size(); ++i) {
            require_non_empty(errors, indexed("usage_details.inputs", i) + ".name",
                              u.inputs[i].name);
        }
        for (std::size_t i = 0; i < u.outputs.size(); ++i) {
            require_non_empty(errors, indexed("usage_details.outputs", i) + ".name",
                              u.outputs[i].name);
        }
        if (u.circuit_ref && !is_lower_hex_sha256(u.circuit_ref->sha256)) {
            errors.push_back({"usage_details.circuit_ref.sha256",
                              "must be 64 lowercase hex characters"});
        }
    }

    if (card.performance_metrics) {
        if (card.performance_metrics->empty()) {
            errors.push_back({"performance_metrics", "must be a non-empty list"});
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < card.performance_metrics->size(); ++i) {
            const MetricSpec& m = (*card.performance_metrics)[i];
            require_non_empty(errors, indexed("performance_metrics", i) + ".name", m.name);
            if (!m.name.empty() && !seen.insert(m.name).second) {
                errors.push_back({indexed("performance_metrics", i) + ".name",
                                  "duplicate metric name \"" + m.name + "\""});
            }
        }
    }

    if (card.limitations) {
        if (card.limitations->empty()) {
            errors.push_back({"limitations", "must be a non-empty list"});
        }
        for (std::size_t i = 0; i < card.limitations->size(); ++i) {
            const Limitation& l = (*card.limitations)[i];
            require_non_empty(errors, indexed("limitations", i) + ".scenario", l.scenario);
            require_non_empty(errors, indexed("limitations", i) + ".failure_mode", l.failure_mode);
        }
    }

    if (card.references) {
        if (card.references->empty()) {
            errors.push_back({"references", "must be a non-empty list"});
        }
        for (std::size_t i = 0; i < card.references->size(); ++i) {
            require_non_empty(errors, indexed("references", i) + ".citation",
                              (*card.references)[i].citation);
        }
    }

    if (card.caveats) {
        if (card.caveats->empty()) {
            errors.push_back({"caveats", "must be a non-empty list"});
        }
        for (std::size_t i = 0; i < card.caveats->size(); ++i) {
            require_non_empty(errors, indexed("caveats", i), (*card.caveats)[i]);
        }
    }

    report.valid = report.missing_sections.empty() && report.field_errors.empty();
    return report;
}

}  // namespace qact
