#include "qact/format.hpp"
#include "qact/render.hpp"

namespace qact {

namespace {

std::string_view yes_no(bool b) {
    return b ? "yes" : "no";
}

void render_overview(std::string& out, const Overview& o) {
    out += "- Provider: " + o.provider + "\n";
    out += "- Maintainer: " + o.maintainer + "\n";
    out += "- Description: " + o.description + "\n";
    out += "- Approach: " + o.approach + "\n";
    out += "- Complexity: " + o.complexity + "\n";
}

void render_intended_use(std::string& out, const IntendedUse& u) {
    out += "Tasks:\n\n";
    for (const std::string& t : u.tasks) {
        out += "- " + t + "\n";
    }
    out += "\nScenarios:\n\n";
    for (const std::string& s : u.scenarios) {
        out += "- " + s + "\n";
    }
}

void render_io_list(std::string& out, const char* label, const std::vector<IoSpec>& ios) {
    if (ios.empty()) {
        return;
    }
    out += std::string(label) + ":\n\n";
    for (const IoSpec& io : ios) {
        out += "- `" + io.name + "` (" + io.type + "): " + io.description + "\n";
    }
    out += "\n";
}

void render_usage_details(std::string& out, const UsageDetails& u) {
    render_io_list(out, "Inputs", u.inputs);
    render_io_list(out, "Outputs", u.outputs);
    out += "| Requirement | Value |\n";
    out += "| --- | --- |\n";
    out += "| Qubits required | " + std::to_string(u.qubits_required) + " |\n";
    out += "| Circuit depth | " + std::to_string(u.circuit_depth) + " |\n";
    out += "| log2 quantum volume required | " + std::to_string(u.log2_qv_required) + " |\n";
    out += "| Mid-circuit control | " + std::string(yes_no(u.uses_mid_circuit_control)) + " |\n";
    if (u.circuit_ref) {
        out += "\nCircuit: `" + u.circuit_ref->path + "` (sha256 `" + u.circuit_ref->sha256 +
               "`)\n";
    }
}

void render_metrics(std::string& out, const std::vector<MetricSpec>& metrics) {
    for (const MetricSpec& m : metrics) {
        out += "- **" + m.name + "**: " + m.description + " (" +
               std::string(metric_direction_key(m.direction));
        if (m.threshold) {
            out += ", threshold " + format_double(*m.threshold);
        }
        out += ")\n";
    }
}

void render_limitations(std::string& out, const std::vector<Limitation>& limitations) {
    for (const Limitation& l : limitations) {
        out += "- **" + l.scenario + "**: " + l.failure_mode + "\n";
    }
}

void render_references(std::string& out, const std::vector<Reference>& references) {
    for (const Reference& r : references) {
        if (r.url) {
            out += "- [" + r.citation + "](" + *r.url + ")\n";
        } else {
            out += "- " + r.citation + "\n";
        }
    }
}

void render_caveats(std::string& out, const std::vector<std::string>& caveats) {
    for (const std::string& c : caveats) {
        out += "- " + c + "\n";
    }
}

}  // namespace

std::string render_markdown(const Card& card, std::optional<Audience> audience) {
    ValidationReport report = validate_card(card, audience);
    if (!report.valid) {
        std::string message =
            audience ? "card is not valid for audience " + std::string(audience_key(*audience))
                     : "card is not valid";
        throw ValidationError(std::move(message), std::move(report));
    }

    const std::vector<Section> sections =
        audience ? audience_sections(*audience) : all_sections();

    std::string out = "# " + card.overview.name + " v" + card.overview.version + "\n";
    for (Section s : sections) {
        out += "\n## " + std::string(section_title(s)) + "\n\n";
        switch (s) {
            case Section::overview:
                render_overview(out, card.overview);
                break;
            case Section::intended_use:
                render_intended_use(out, *card.intended_use);
                break;
            case Section::usage_details:
                render_usage_details(out, *card.usage_details);
                break;
            case Section::performance_metrics:
                render_metrics(out, *card.performance_metrics);
                break;
            case Section::limitations:
                render_limitations(out, *card.limitations);
                break;
            case Section::references:
                render_references(out, *card.references);
                break;
            case Section::caveats:
                render_caveats(out, *card.caveats);
                break;
        }
    }
    return out;
}

}  // namespace qact
