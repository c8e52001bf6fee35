#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qact/errors.hpp"

namespace qact {

/// Card format version emitted and accepted by this toolkit.
inline constexpr std::string_view kQacVersion = "0.1";

/// Card recipients: technology management and architects (T),
/// software developers (D), operations (O).
enum class Audience { T, D, O };

/// The seven card sections, in canonical row order.
enum class Section {
    overview,
    intended_use,
    usage_details,
    performance_metrics,
    limitations,
    references,
    caveats,
};

inline constexpr std::size_t kSectionCount = 7;

/// All sections in canonical order.
const std::vector<Section>& all_sections();

/// JSON key of a section ("usage_details", ...).
std::string_view section_key(Section s);

/// Document heading of a section ("Usage details", ...).
std::string_view section_title(Section s);

std::string_view audience_key(Audience a);
std::optional<Audience> audience_from_key(std::string_view key);

struct Overview {
    std::string name;
    std::string version;
    std::string provider;
    std::string maintainer;
    std::string description;
    std::string approach;
    std::string complexity;

    bool operator==(const Overview&) const = default;
};

struct IntendedUse {
    std::vector<std::string> tasks;
    std::vector<std::string> scenarios;

    bool operator==(const IntendedUse&) const = default;
};

struct IoSpec {
    std::string name;
    std::string type;
    std::string description;

    bool operator==(const IoSpec&) const = default;
};

struct CircuitRef {
    std::string path;
    std::string sha256;

    bool operator==(const CircuitRef&) const = default;
};

struct UsageDetails {
    std::vector<IoSpec> inputs;
    std::vector<IoSpec> outputs;
    std::int64_t qubits_required = 1;
    std::int64_t circuit_depth = 0;
    std::int64_t log2_qv_required = 0;
    bool uses_mid_circuit_control = false;
    std::optional<CircuitRef> circuit_ref;

    bool operator==(const UsageDetails&) const = default;
};

enum class MetricDirection { higher_is_better, lower_is_better };

std::string_view metric_direction_key(MetricDirection d);

struct MetricSpec {
    std::string name;
    std::string description;
    std::optional<double> threshold;
    MetricDirection direction = MetricDirection::higher_is_better;

    bool operator==(const MetricSpec&) const = default;
};

struct Limitation {
    std::string scenario;
    std::string failure_mode;

    bool operator==(const Limitation&) const = default;
};

struct Reference {
    std::string citation;
    std::optional<std::string> url;

    bool operator==(const Reference&) const = default;
};

/// A quantum algorithm card. The overview is always present; every other
/// section is optional at parse time and checked per audience by
/// validate_card.
struct Card {
    std::string qac_version{kQacVersion};
    Overview overview;
    std::optional<IntendedUse> intended_use;
    std::optional<UsageDetails> usage_details;
    std::optional<std::vector<MetricSpec>> performance_metrics;
    std::optional<std::vector<Limitation>> limitations;
    std::optional<std::vector<Reference>> references;
    std::optional<std::vector<std::string>> caveats;

    bool has_section(Section s) const;

    bool operator==(const Card&) const = default;
};

struct FieldError {
    std::string path;
    std::string message;

    bool operator==(const FieldError&) const = default;
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> missing_sections;
    std::vector<FieldError> field_errors;
};

/// Raised when an operation requires a card that validates for a given
/// audience and it does not; carries the failing report.
class ValidationError : public DomainError {
 public:
    ValidationError(std::string message, ValidationReport report)
        : DomainError(std::move(message)), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

 private:
    ValidationReport report_;
};

/// Sections a given audience receives, in canonical row order.
std::vector<Section> audience_sections(Audience a);

/// Parse a card document. Rejects unknown keys, wrong types and any
/// qac_version other than "0.1". Value-level invariants (non-empty names,
/// semantic versions, ...) are left to validate_card.
Card parse_card(std::string_view text);

/// Canonical serialization: UTF-8 JSON, two-space indent, sections in row
/// order, keys in schema order, trailing newline. Equal cards produce
/// byte-identical output.
std::string serialize_card(const Card& card);

/// Check section completeness (for one audience, or for all three when no
/// audience is given) and value-level invariants.
ValidationReport validate_card(const Card& card,
                               std::optional<Audience> audience = std::nullopt);

}  // namespace qact
