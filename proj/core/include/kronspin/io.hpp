#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "kronspin/hamiltonian.hpp"
#include "kronspin/matrix.hpp"

namespace kronspin {

// Matrix text format: a "rows cols" header line, then `rows` lines of `cols`
// whitespace-separated entries. An entry is "re", "re+imi" or "re-imi"
// (e.g. "0+1i", "-0.5-2i"). Blank lines are skipped.

/// Parses the matrix text format. Throws ParseError carrying the 1-based line
/// and column of the offending token.
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

/// Formats a single entry with shortest round-trip decimals.
std::string format_entry(Complex z);

/// Writes the matrix text format; parse_matrix(format_matrix(m)) == m bitwise.
std::string format_matrix(const ComplexMatrix& m);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

// Spec file format:
//   {"n_sites": int, "mu_b0": real, "couplings": [{"i": int, "j": int, "J": real}, ...]}

/// Parses a spec document. Throws ParseError for malformed JSON or missing
/// fields and RangeError / ContractError for invalid content.
HamiltonianSpec parse_spec(std::string_view json_text);
HamiltonianSpec read_spec_file(const std::string& path);
std::string format_spec(const HamiltonianSpec& spec);

/// FNV-1a 64-bit hash of the canonical spec document, as 16 hex digits.
std::string spec_hash(const HamiltonianSpec& spec);

}  // namespace kronspin
