#pragma once

#include <optional>
#include <string>

#include "qact/card.hpp"

namespace qact {

/// Render a card to CommonMark text. With an audience, emits exactly that
/// audience's sections; without, emits all seven. The card must pass
/// validate_card for the same audience argument, otherwise a
/// ValidationError carrying the report is thrown.
std::string render_markdown(const Card& card, std::optional<Audience> audience = std::nullopt);

}  // namespace qact
