#pragma once

#include <string>
#include <string_view>

namespace ghostpin {

// Lengths are SI meters everywhere inside the library. Config files may
// suffix numbers with nm/um/µm/mm/cm/m; a bare number is taken as meters.
double parse_length(std::string_view text);

// Plain double, rejecting trailing garbage.
double parse_double(std::string_view text);

// Shortest decimal that round-trips the exact binary64 value.
std::string format_double(double value);

// Human-oriented length with an SI suffix (used in reports, not in CSV).
std::string format_length(double meters);

}  // namespace ghostpin
