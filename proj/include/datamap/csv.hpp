#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace datamap::csv {

struct Row {
    std::size_t number = 0;  // 1-based data row number; the header is row 0
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

// RFC 4180 style: comma separated, double quotes escape commas, quotes and
// newlines inside fields. Accepts \n and \r\n row endings.
Table parse(const std::string& text);

std::string escape(const std::string& field);

// Fields joined with commas, escaped as needed, terminated with \n.
std::string join_row(const std::vector<std::string>& fields);

}  // namespace datamap::csv
