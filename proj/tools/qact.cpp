#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qact/card.hpp"
#include "qact/digest.hpp"
#include "qact/format.hpp"
#include "qact/generator.hpp"
#include "qact/hardware.hpp"
#include "qact/metrics.hpp"
#include "qact/qasm.hpp"
#include "qact/render.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw qact::Error("cannot open \"" + path + "\"");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw qact::Error("cannot read \"" + path + "\"");
    }
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw qact::Error("cannot open \"" + path + "\" for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw qact::Error("cannot write \"" + path + "\"");
    }
}

qact::Card parse_card_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return qact::parse_card(text);
    } catch (const qact::ParseError& e) {
        throw qact::ParseError(path + ": " + e.what());
    }
}

qact::FlatCircuit flatten_text(const std::string& path, const std::string& text) {
    try {
        return qact::flatten(qact::qasm::parse_program(text));
    } catch (const qact::Error& e) {
        throw qact::Error(path + ":" + std::string(e.what()));
    }
}

qact::FlatCircuit flatten_file(const std::string& path) {
    return flatten_text(path, read_file(path));
}

std::optional<qact::Audience> audience_option(const std::string& key) {
    if (key.empty()) {
        return std::nullopt;
    }
    return qact::audience_from_key(key);
}

void print_metrics_table(std::ostream& os, const qact::CircuitMetrics& m) {
    auto row = [&os](std::string_view name, const std::string& value) {
        os << name;
        for (std::size_t i = name.size(); i < 26; ++i) {
            os << ' ';
        }
        os << value << "\n";
    };
    auto join_counts = [](const auto& map) {
        std::string out;
        for (const auto& [key, count] : map) {
            if (!out.empty()) {
                out += ' ';
            }
            if constexpr (std::is_same_v<std::decay_t<decltype(key)>, std::string>) {
                out += key;
            } else {
                out += std::to_string(key);
            }
            out += ':' + std::to_string(count);
        }
        return out.empty() ? std::string("-") : out;
    };
    row("width", std::to_string(m.width));
    row("num_qubits", std::to_string(m.num_qubits));
    row("num_clbits", std::to_string(m.num_clbits));
    row("depth", std::to_string(m.depth));
    row("gate_histogram", join_counts(m.gate_histogram));
    row("counts_by_arity", join_counts(m.counts_by_arity));
    row("two_qubit_gate_count", std::to_string(m.two_qubit_gate_count));
    row("t_count", std::to_string(m.t_count));
    row("measure_count", std::to_string(m.measure_count));
    row("has_opaque", m.has_opaque ? "true" : "false");
    row("uses_mid_circuit_control", m.uses_mid_circuit_control ? "true" : "false");
    row("log2_qv_required", std::to_string(m.log2_qv_required));
}

void print_report(std::ostream& os, const qact::ValidationReport& report) {
    os << "valid: " << (report.valid ? "true" : "false") << "\n";
    if (!report.missing_sections.empty()) {
        os << "missing sections:\n";
        for (const std::string& s : report.missing_sections) {
            os << "  - " << s << "\n";
        }
    }
    if (!report.field_errors.empty()) {
        os << "field errors:\n";
        for (const qact::FieldError& e : report.field_errors) {
            os << "  - " << e.path << ": " << e.message << "\n";
        }
    }
}

void print_fit_reports(std::ostream& os, const std::vector<qact::FitReport>& reports) {
    bool first = true;
    for (const qact::FitReport& r : reports) {
        if (!first) {
            os << "\n";
        }
        first = false;
        os << r.backend << ": " << (r.fits ? "fits" : "does not fit") << "\n";
        for (const qact::Check& c : r.checks) {
            os << "  " << c.name << ": required ";
            if (c.name == "mid_circuit_control") {
                os << (c.required != 0 ? "yes" : "no") << ", available "
                   << (c.available != 0 ? "yes" : "no");
            } else {
                os << c.required << ", available " << c.available;
            }
            os << " (" << (c.passed ? "pass" : "fail") << ")\n";
        }
        if (r.estimated_cost) {
            os << "  estimated cost: " << qact::format_double(*r.estimated_cost) << "\n";
        }
        for (const std::string& note : r.notes) {
            os << "  note: " << note << "\n";
        }
    }
}

std::string attach_value(const std::optional<qact::UsageDetails>& details,
                         const std::string& field) {
    if (!details) {
        return "unset";
    }
    if (field == "qubits_required") {
        return std::to_string(details->qubits_required);
    }
    if (field == "circuit_depth") {
        return std::to_string(details->circuit_depth);
    }
    if (field == "log2_qv_required") {
        return std::to_string(details->log2_qv_required);
    }
    if (field == "uses_mid_circuit_control") {
        return details->uses_mid_circuit_control ? "true" : "false";
    }
    if (!details->circuit_ref) {
        return "unset";
    }
    return field == "circuit_ref.path" ? details->circuit_ref->path
                                       : details->circuit_ref->sha256;
}

void print_attach_diff(std::ostream& os, const std::optional<qact::UsageDetails>& before,
                       const qact::Card& updated) {
    static const char* kFields[] = {"qubits_required",           "circuit_depth",
                                    "log2_qv_required",          "uses_mid_circuit_control",
                                    "circuit_ref.path",          "circuit_ref.sha256"};
    bool changed = false;
    for (const char* field : kFields) {
        const std::string old_value = attach_value(before, field);
        const std::string new_value = attach_value(updated.usage_details, field);
        if (old_value != new_value) {
            os << "usage_details." << field << ": " << old_value << " -> " << new_value << "\n";
            changed = true;
        }
    }
    if (!changed) {
        os << "no changes\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Algorithm Cards toolkit"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string analyze_path;
    bool analyze_json = false;
    CLI::App* analyze = app.add_subcommand("analyze", "Compute resource metrics of a circuit");
    analyze->add_option("circuit", analyze_path, "OpenQASM 2.0 file")->required();
    analyze->add_flag("--json", analyze_json, "Emit metrics as JSON");
    analyze->callback([&] {
        qact::CircuitMetrics metrics = qact::compute_metrics(flatten_file(analyze_path));
        if (analyze_json) {
            std::cout << qact::metrics_to_json(metrics).dump(2) << "\n";
        } else {
            print_metrics_table(std::cout, metrics);
        }
    });

    std::string init_name;
    std::string init_out;
    CLI::App* init = app.add_subcommand("init", "Write a scaffold card");
    init->add_option("name", init_name, "Algorithm name")->required();
    init->add_option("-o,--output", init_out, "Card file to write")->required();
    init->callback([&] {
        if (init_name.empty()) {
            throw qact::Error("init: name must be non-empty");
        }
        write_file(init_out, qact::serialize_card(qact::scaffold_card(init_name)));
    });

    std::string attach_card_path;
    std::string attach_qasm_path;
    CLI::App* attach =
        app.add_subcommand("attach", "Derive usage details from a circuit and rewrite the card");
    attach->add_option("card", attach_card_path, "Card file (rewritten in place)")->required();
    attach->add_option("circuit", attach_qasm_path, "OpenQASM 2.0 file")->required();
    attach->callback([&] {
        const qact::Card card = parse_card_file(attach_card_path);
        const std::string qasm_text = read_file(attach_qasm_path);
        const qact::CircuitMetrics metrics =
            qact::compute_metrics(flatten_text(attach_qasm_path, qasm_text));
        const qact::Card updated = qact::attach_circuit(card, metrics, attach_qasm_path,
                                                        qact::sha256_hex(qasm_text));
        print_attach_diff(std::cout, card.usage_details, updated);
        write_file(attach_card_path, qact::serialize_card(updated));
    });

    std::string validate_path;
    std::string validate_audience;
    CLI::App* validate = app.add_subcommand("validate", "Check card completeness and invariants");
    validate->add_option("card", validate_path, "Card file")->required();
    validate->add_option("--audience", validate_audience, "Audience (T, D or O)")
        ->check(CLI::IsMember({"T", "D", "O"}));
    validate->callback([&] {
        const qact::Card card = parse_card_file(validate_path);
        const qact::ValidationReport report =
            qact::validate_card(card, audience_option(validate_audience));
        print_report(std::cout, report);
        exit_code = report.valid ? 0 : 1;
    });

    std::string render_path;
    std::string render_audience;
    std::string render_out;
    CLI::App* render = app.add_subcommand("render", "Render a card to markdown");
    render->add_option("card", render_path, "Card file")->required();
    render->add_option("--audience", render_audience, "Audience (T, D or O)")
        ->check(CLI::IsMember({"T", "D", "O"}));
    render->add_option("-o,--output", render_out, "Output file (default stdout)");
    render->callback([&] {
        const qact::Card card = parse_card_file(render_path);
        const std::string doc = qact::render_markdown(card, audience_option(render_audience));
        if (render_out.empty()) {
            std::cout << doc;
        } else {
            write_file(render_out, doc);
        }
    });

    std::string match_card_path;
    std::string match_profiles_path;
    std::int64_t match_shots = 0;
    bool match_json = false;
    CLI::App* match = app.add_subcommand("match", "Rank hardware backends against a card");
    match->add_option("card", match_card_path, "Card file")->required();
    match->add_option("profiles", match_profiles_path, "Backend profile file")->required();
    CLI::Option* shots_opt =
        match->add_option("--shots", match_shots, "Shots for cost estimates")
            ->check(CLI::PositiveNumber);
    match->add_flag("--json", match_json, "Emit reports as JSON");
    match->callback([&] {
        const qact::Card card = parse_card_file(match_card_path);
        std::vector<qact::HardwareProfile> profiles;
        try {
            profiles = qact::parse_profiles(read_file(match_profiles_path));
        } catch (const qact::ParseError& e) {
            throw qact::ParseError(match_profiles_path + ": " + e.what());
        }
        std::optional<std::int64_t> shots;
        if (shots_opt->count() > 0) {
            shots = match_shots;
        }
        const std::vector<qact::FitReport> reports = qact::rank_backends(card, profiles, shots);
        if (match_json) {
            std::cout << qact::fit_reports_to_json(reports).dump(2) << "\n";
        } else {
            print_fit_reports(std::cout, reports);
        }
        bool any_fits = false;
        for (const qact::FitReport& r : reports) {
            any_fits = any_fits || r.fits;
        }
        exit_code = any_fits ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qact::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        print_report(std::cerr, e.report());
        return 1;
    } catch (const qact::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
