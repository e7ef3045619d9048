#include "tfl/csv.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tfl {

std::string csv_double(double v) {
    std::ostringstream os;
    os.precision(std::numeric_limits<double>::max_digits10);
    os << v;
    return os.str();
}

std::vector<std::string> csv_split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

std::vector<std::map<std::string, std::string>> read_csv_rows(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv_rows: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_csv_rows: " + path + " is empty");
    }
    const auto header = csv_split(line);
    std::vector<std::map<std::string, std::string>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv_split(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("read_csv_rows: " + path + ":" +
                                     std::to_string(line_no) +
                                     ": expected " +
                                     std::to_string(header.size()) +
                                     " fields, got " +
                                     std::to_string(fields.size()));
        }
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) {
            row[header[i]] = fields[i];
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace tfl
