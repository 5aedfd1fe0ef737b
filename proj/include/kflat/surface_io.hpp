#pragma once

#include <iosfwd>
#include <string>

#include "kflat/surface.hpp"

namespace kflat {

/// Reads the line-oriented surface format:
///   k <int>
///   polygon <name>
///   v <x> <y>            (decimal or p/q)
///   glue <name>.<i> <name>.<j> rot <r>
/// Lines starting with '#' are comments.
FlatSurface parse_surface(std::istream& in, Tolerance tol = {});
FlatSurface parse_surface_string(const std::string& text, Tolerance tol = {});
FlatSurface load_surface(const std::string& path, Tolerance tol = {});

/// Writes the same format with round-trippable (17 significant digit) coordinates.
void write_surface(std::ostream& out, const FlatSurface& s);
std::string surface_to_string(const FlatSurface& s);
void save_surface(const std::string& path, const FlatSurface& s);

/// Parses "k=3 g=1 mu=2,-2".
StratumSignature parse_signature(const std::string& text);

/// Decimal or exact rational "p/q".
double parse_number(const std::string& token);

}  // namespace kflat
