#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace modstar::csv {

// 17 significant digits, C locale, "nan"/"inf" for non-finite values.
std::string format(double x);
std::string format(std::int64_t x);

// Quotes fields containing a comma, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace modstar::csv
