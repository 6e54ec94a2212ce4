#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blinkbench {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Locale-independent double parsing via std::from_chars. Throws ParseError
// on anything that is not a complete finite number.
double parse_double(std::string_view token, std::string_view context);

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

// Compensated (Neumaier) summation; fixed left-to-right order.
double neumaier_sum(std::span<const double> values);

double mean(std::span<const double> values);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace blinkbench
