#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qact/card.hpp"
#include "qact/digest.hpp"
#include "qact/generator.hpp"
#include "qact/hardware.hpp"
#include "qact/metrics.hpp"
#include "qact/qasm.hpp"
#include "qact/render.hpp"

namespace py = pybind11;

namespace {

std::optional<qact::Audience> audience_arg(const std::optional<std::string>& key) {
    if (!key) {
        return std::nullopt;
    }
    std::optional<qact::Audience> a = qact::audience_from_key(*key);
    if (!a) {
        throw qact::DomainError("unknown audience \"" + *key + "\", expected T, D or O");
    }
    return a;
}

std::string report_json(const qact::ValidationReport& report) {
    nlohmann::ordered_json j;
    j["valid"] = report.valid;
    j["missing_sections"] = report.missing_sections;
    j["field_errors"] = nlohmann::ordered_json::array();
    for (const qact::FieldError& e : report.field_errors) {
        j["field_errors"].push_back({{"path", e.path}, {"message", e.message}});
    }
    return j.dump(2);
}

}  // namespace

PYBIND11_MODULE(_qact, m) {
    m.doc() = "Quantum Algorithm Cards toolkit core (string-in/string-out; the "
              "qact package wraps these with dict-based helpers)";

    auto error = py::register_exception<qact::Error>(m, "Error");
    py::register_exception<qact::ParseError>(m, "ParseError", error);
    py::register_exception<qact::QasmError>(m, "QasmError", error);
    py::register_exception<qact::qasm::EvalError>(m, "EvalError", error);
    auto domain = py::register_exception<qact::DomainError>(m, "DomainError", error);
    py::register_exception<qact::ValidationError>(m, "ValidationError", domain);

    m.attr("QAC_VERSION") = std::string(qact::kQacVersion);

    m.def(
        "metrics_json",
        [](const std::string& source) {
            return qact::metrics_to_json(
                       qact::compute_metrics(qact::flatten(qact::qasm::parse_program(source))))
                .dump(2);
        },
        py::arg("source"), "Resource metrics of an OpenQASM 2.0 source, as a JSON string.");

    m.def(
        "canonical_qasm",
        [](const std::string& source) {
            return qact::qasm::print_program(qact::qasm::parse_program(source));
        },
        py::arg("source"), "Parse and pretty-print an OpenQASM 2.0 source.");

    m.def(
        "scaffold_card_json",
        [](const std::string& name) { return qact::serialize_card(qact::scaffold_card(name)); },
        py::arg("name"));

    m.def(
        "serialize_card",
        [](const std::string& card) { return qact::serialize_card(qact::parse_card(card)); },
        py::arg("card"), "Canonicalize a card document.");

    m.def(
        "attach_circuit_json",
        [](const std::string& card, const std::string& source, const std::string& path) {
            const qact::CircuitMetrics metrics =
                qact::compute_metrics(qact::flatten(qact::qasm::parse_program(source)));
            return qact::serialize_card(qact::attach_circuit(qact::parse_card(card), metrics,
                                                             path, qact::sha256_hex(source)));
        },
        py::arg("card"), py::arg("source"), py::arg("path"));

    m.def(
        "validate_card_json",
        [](const std::string& card, const std::optional<std::string>& audience) {
            return report_json(qact::validate_card(qact::parse_card(card),
                                                   audience_arg(audience)));
        },
        py::arg("card"), py::arg("audience") = std::nullopt);

    m.def(
        "render_markdown",
        [](const std::string& card, const std::optional<std::string>& audience) {
            return qact::render_markdown(qact::parse_card(card), audience_arg(audience));
        },
        py::arg("card"), py::arg("audience") = std::nullopt);

    m.def(
        "match_json",
        [](const std::string& card, const std::string& profiles,
           std::optional<std::int64_t> shots) {
            return qact::fit_reports_to_json(qact::rank_backends(qact::parse_card(card),
                                                                 qact::parse_profiles(profiles),
                                                                 shots))
                .dump(2);
        },
        py::arg("card"), py::arg("profiles"), py::arg("shots") = std::nullopt);

    m.def(
        "audience_sections",
        [](const std::string& audience) {
            std::vector<std::string> out;
            for (qact::Section s : qact::audience_sections(*audience_arg(audience))) {
                out.emplace_back(qact::section_key(s));
            }
            return out;
        },
        py::arg("audience"));

    m.def(
        "sha256_hex", [](const py::bytes& data) { return qact::sha256_hex(std::string(data)); },
        py::arg("data"));
}
