#pragma once

#include <iosfwd>
#include <string>

#include "core/types.hpp"

namespace botoc {

// Text format shared by the custom-Hamiltonian loader and the CLI:
// first line "rows cols", then one line per row with whitespace-separated
// entries written as re+imj (for example 0.5-1.25j). Values are printed
// with 17 significant digits so save/load round-trips bit for bit.

Matrix parse_matrix(std::istream& in, const std::string& source_name);
std::string format_matrix(const Matrix& m);

Matrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Matrix& m);

}  // namespace botoc
