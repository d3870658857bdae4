#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foliate/families.hpp"
#include "foliate/verifier.hpp"

namespace foliate {

// Setup documents are JSON objects:
//
//   {
//     "dim": 5,
//     "epsilon": [1, 1, 1, 1, -1],
//     "brackets": [{"i": 0, "j": 1, "coeffs": ["0", "0", "2", "0", "0"]}, ...],
//     "vertical": [0, 1, 2],
//     "horizontal": [3, 4],
//     "meta": {...}
//   }
//
// Coefficients are exact rationals written "p" or "p/q". Each (i, j) pair
// appears at most once with i < j; [e_j, e_i] is implied. "meta" is optional,
// free-form and ignored when reading.

/// Canonical document text for `setup`. When `spec` is given the meta block
/// records the family, its parameters, the signature, the basis labels and
/// the [X,Y] coefficients along the vertical basis.
std::string serialize_setup(const FoliationSetup& setup, const std::optional<FamilySpec>& spec = std::nullopt);

/// Parses document text. Throws ParseError with a line/column for syntax
/// errors and a field path (e.g. "brackets[2].coeffs[1]") for content errors.
FoliationSetup parse_setup(std::string_view text);

/// Reads and parses a document file. Throws ParseError if unreadable.
FoliationSetup load_setup(const std::string& path);

/// "-1/2 A + 3 X", "0" for the zero vector.
std::string format_combination(const Vector& v, const std::vector<std::string>& labels);

/// Machine-readable sweep report with a stable key order.
std::string sweep_report_to_json(const SweepReport& report);

/// Machine-readable counterexample list.
std::string counterexamples_to_json(FamilyId family, const std::vector<Counterexample>& list);

}  // namespace foliate
