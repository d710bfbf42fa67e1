#pragma once

#include <string>
#include <string_view>

namespace elastic {

// Shortest general-format rendering with 12 significant digits.
std::string format_number(double value);

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace elastic
