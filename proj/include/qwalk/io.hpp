#ifndef QWALK_IO_HPP
#define QWALK_IO_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

// Fixed 12-significant-digit formatting (%.12g): enough headroom for 1e-5
// table comparisons while keeping output bytes stable across runs.
std::string fmt12(double v);

// Escaped, quoted JSON string literal.
std::string json_quote(const std::string& s);

// One tabular result document.  config holds (key, raw JSON value) pairs in
// emission order; comment, when nonempty, becomes a single leading "# " line
// in CSV; fit_json, when nonempty, must be a raw JSON object and is appended
// as a "# fit {...}" CSV footer or emitted under the "fit" key in JSON.
struct TableDoc {
    std::string comment;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string fit_json;
};

// Comma-separated, LF line endings, header row first.  Values use fmt12.
void write_csv(std::ostream& os, const TableDoc& doc);

// One top-level object with "config", "columns", "rows", "fit" keys ("fit"
// is null unless fit_json is set).  Row values use fmt12; non-finite values
// are emitted as JSON strings since JSON has no number token for them.
void write_json(std::ostream& os, const TableDoc& doc);

}  // namespace qwalk

#endif
