#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swq/core.hpp"

namespace swq::io {

// Reads a header-first CSV. Required columns: an id column (named "id" or
// ending in "_id"), "x" and "y". Every other column is a numeric attribute;
// an empty field is NULL. Throws FormatError, IoError, or the Dataset
// construction errors.
Dataset read_csv(std::istream& in);
Dataset read_csv(const std::filesystem::path& path);

// Writes points back in the same layout (id,x,y,attrs...).
void write_csv(const Dataset& ds, std::ostream& out);

// Result rows as CSV: floats with 17 significant digits, NULL as an empty
// field, fields containing ',' or '"' quoted.
void write_csv(const ResultTable& table, std::ostream& out);

// "%.17g": round-trips every finite double.
std::string format_double(double v);

}  // namespace swq::io
