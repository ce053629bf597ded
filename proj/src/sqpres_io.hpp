#pragma once

#include <string>

#include "squad.hpp"

namespace squadk {

/// Sectioned text format for presentations:
///
///   gens0:
///     obj:A
///   gens1:
///     we:f := -obj:B +obj:A
///   rels0:
///     +obj:Z
///   rels1:
///     -we:f +we:g
///
/// Words are sequences of signed names; brackets are written `<w|w'>`,
/// the action `(expr)^(w)`, sums as signed term sequences, and `0` for the
/// empty expression.  Serialization is canonical, so parse/serialize
/// round-trips are byte-identical.
std::string to_sqpres(const SquadPresentation& p);
SquadPresentation parse_sqpres(const std::string& text);

SquadPresentation load_sqpres_file(const std::string& path);
void save_sqpres_file(const SquadPresentation& p, const std::string& path);

}  // namespace squadk
