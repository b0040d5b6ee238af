#include "report.hpp"

#include <algorithm>

#include "pomlab/error.hpp"

namespace pomlab::cli {

namespace {

Json cell_json(const Cell &cell) {
    return std::visit([](const auto &v) { return Json(v); }, cell);
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

Format parse_format(const std::string &text) {
    if (text == "table") {
        return Format::table;
    }
    if (text == "csv") {
        return Format::csv;
    }
    if (text == "json") {
        return Format::json;
    }
    throw ValidationError("unknown format '" + text + "'");
}

std::string render_cell(const Cell &cell) {
    struct Visitor {
        std::string operator()(const std::string &s) const {
            return s;
        }
        std::string operator()(double v) const {
            return format_number(v);
        }
        std::string operator()(std::int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(std::uint64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
    };
    return std::visit(Visitor{}, cell);
}

void render(const Report &report, Format format, std::ostream &out) {
    switch (format) {
        case Format::json: {
            Json j = report.json;
            if (j.is_null()) {
                j = Json::array();
                for (const auto &row : report.rows) {
                    Json obj = Json::object();
                    for (std::size_t c = 0; c < report.columns.size(); ++c) {
                        obj[report.columns[c]] = cell_json(row[c]);
                    }
                    j.push_back(std::move(obj));
                }
            }
            out << round_numbers(j).dump(2) << "\n";
            return;
        }
        case Format::csv: {
            for (std::size_t c = 0; c < report.columns.size(); ++c) {
                out << (c ? "," : "") << csv_escape(report.columns[c]);
            }
            out << "\n";
            for (const auto &row : report.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out << (c ? "," : "") << csv_escape(render_cell(row[c]));
                }
                out << "\n";
            }
            return;
        }
        case Format::table: {
            std::vector<std::size_t> width(report.columns.size());
            for (std::size_t c = 0; c < width.size(); ++c) {
                width[c] = report.columns[c].size();
            }
            std::vector<std::vector<std::string>> text;
            for (const auto &row : report.rows) {
                std::vector<std::string> line;
                for (std::size_t c = 0; c < row.size(); ++c) {
                    line.push_back(render_cell(row[c]));
                    width[c] = std::max(width[c], line.back().size());
                }
                text.push_back(std::move(line));
            }
            auto emit = [&](const std::vector<std::string> &cells) {
                std::string line;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (c) {
                        line += "  ";
                    }
                    line += cells[c];
                    if (c + 1 < cells.size()) {
                        line.append(width[c] - cells[c].size(), ' ');
                    }
                }
                out << line << "\n";
            };
            emit(report.columns);
            std::vector<std::string> rule;
            for (auto w : width) {
                rule.emplace_back(w, '-');
            }
            emit(rule);
            for (const auto &line : text) {
                emit(line);
            }
            return;
        }
    }
}

}  // namespace pomlab::cli
