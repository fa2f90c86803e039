#include "datamap/csv.hpp"

#include "datamap/errors.hpp"

namespace datamap::csv {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\r\n") != std::string::npos;
}

}  // namespace

Table parse(const std::string& text) {
    Table table;
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    bool row_started = false;
    bool header_done = false;
    std::size_t row_count = 0;

    auto end_field = [&] {
        fields.push_back(cur);
        cur.clear();
    };
    auto end_row = [&] {
        end_field();
        bool blank = fields.size() == 1 && fields[0].empty();
        if (blank) {
            fields.clear();
            row_started = false;
            return;
        }
        if (!header_done) {
            table.header = std::move(fields);
            header_done = true;
        } else {
            ++row_count;
            table.rows.push_back(Row{row_count, std::move(fields)});
        }
        fields = {};
        row_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') {
                    break;  // consumed with the \n
                }
                end_row();
                break;
            case '\n':
                end_row();
                break;
            default:
                cur.push_back(c);
                row_started = true;
                break;
        }
    }
    if (in_quotes) {
        throw CsvError("unterminated quoted field", row_count, "");
    }
    if (row_started || !cur.empty() || !fields.empty()) {
        end_row();  // final row without trailing newline
    }
    return table;
}

std::string escape(const std::string& field) {
    if (!needs_quoting(field)) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out.push_back(',');
        }
        out += escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

}  // namespace datamap::csv
