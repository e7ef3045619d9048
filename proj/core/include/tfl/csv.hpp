#pragma once

#include <map>
#include <string>
#include <vector>

namespace tfl {

// Doubles in CSV output carry max_digits10 significant digits, so reading a
// value back reproduces the original bit pattern.
std::string csv_double(double v);

std::vector<std::string> csv_split(const std::string& line, char sep = ',');

// Reads a header-first CSV into one map per row, keyed by column name.
// The formats this library writes never quote fields, so no quote handling.
std::vector<std::map<std::string, std::string>> read_csv_rows(
    const std::string& path);

}  // namespace tfl
