#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace datamap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Bad or missing configuration: unreadable config file, missing taxonomy or
// rules file, invalid converter templates. Maps to CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed tabular input. Carries the 1-based data row and the column name.
class CsvError : public Error {
public:
    CsvError(const std::string& message, std::size_t row, std::string column)
        : Error(message), row_(row), column_(std::move(column)) {}

    std::size_t row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

// Structural violations in a taxonomy or rules file. Collects every
// violation found so a file can be fixed in one pass.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& violations) {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) {
                out += "; ";
            }
            out += v;
        }
        return out.empty() ? std::string("validation failed") : out;
    }
    std::vector<std::string> violations_;
};

// No <id>.txt or <id>.pdf in the document store. Non-fatal at pipeline
// level: the document is quarantined, not the run aborted.
class MissingDocumentError : public Error {
public:
    explicit MissingDocumentError(std::string record_id)
        : Error("no document file found for record '" + record_id + "'"),
          record_id_(std::move(record_id)) {}

    const std::string& record_id() const { return record_id_; }

private:
    std::string record_id_;
};

// External converter command failed or timed out. Carries captured stderr.
class ConversionError : public Error {
public:
    ConversionError(const std::string& message, std::string stderr_output)
        : Error(message), stderr_output_(std::move(stderr_output)) {}

    const std::string& stderr_output() const { return stderr_output_; }

private:
    std::string stderr_output_;
};

// A label fed to the aggregator does not resolve to a taxonomy leaf.
class AggregationError : public Error {
public:
    AggregationError(std::string record_id, std::string label_path)
        : Error("record '" + record_id + "' carries label '" + label_path +
                "' which is not a taxonomy leaf"),
          record_id_(std::move(record_id)),
          label_path_(std::move(label_path)) {}

    const std::string& record_id() const { return record_id_; }
    const std::string& label_path() const { return label_path_; }

private:
    std::string record_id_;
    std::string label_path_;
};

// Fatal failure of a pipeline stage. Maps to CLI exit code 3.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& message)
        : Error(stage + ": " + message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace datamap
