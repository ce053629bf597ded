#pragma once

#include <string>

#include "window.hpp"

namespace squadk {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Sectioned text format for windows: [objects], [zero], [morphisms],
/// [compose], [cofibrations], [weak_equivalences], [pushout], [coproduct],
/// [cylinder].  Comments with '#'; whitespace-insensitive; identities are
/// inferred from the composition table.  Parse errors carry line numbers.
WaldhausenWindow parse_wcat(const std::string& text);

std::string to_wcat(const WaldhausenWindow& w);

WaldhausenWindow load_wcat_file(const std::string& path);
void save_wcat_file(const WaldhausenWindow& w, const std::string& path);

}  // namespace squadk
