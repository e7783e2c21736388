#include "qwalk/io.hpp"

#include <cmath>
#include <cstdio>

namespace qwalk {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

namespace {

std::string json_value(double v) {
    if (!std::isfinite(v)) return json_quote(fmt12(v));
    return fmt12(v);
}

}  // namespace

void write_csv(std::ostream& os, const TableDoc& doc) {
    if (!doc.comment.empty()) os << "# " << doc.comment << "\n";
    for (size_t i = 0; i < doc.columns.size(); ++i)
        os << (i ? "," : "") << doc.columns[i];
    os << "\n";
    for (const std::vector<double>& row : doc.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt12(row[i]);
        os << "\n";
    }
    if (!doc.fit_json.empty()) os << "# fit " << doc.fit_json << "\n";
}

void write_json(std::ostream& os, const TableDoc& doc) {
    os << "{\n  \"config\": {";
    for (size_t i = 0; i < doc.config.size(); ++i) {
        os << (i ? ", " : "") << json_quote(doc.config[i].first) << ": "
           << doc.config[i].second;
    }
    os << "},\n  \"columns\": [";
    for (size_t i = 0; i < doc.columns.size(); ++i)
        os << (i ? ", " : "") << json_quote(doc.columns[i]);
    os << "],\n  \"rows\": [";
    for (size_t r = 0; r < doc.rows.size(); ++r) {
        os << (r ? ",\n    " : "\n    ") << "[";
        for (size_t i = 0; i < doc.rows[r].size(); ++i)
            os << (i ? ", " : "") << json_value(doc.rows[r][i]);
        os << "]";
    }
    os << (doc.rows.empty() ? "" : "\n  ") << "],\n  \"fit\": "
       << (doc.fit_json.empty() ? "null" : doc.fit_json) << "\n}\n";
}

}  // namespace qwalk
