#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "pomlab/serialize.hpp"

namespace pomlab::cli {

enum class Format { table, csv, json };

Format parse_format(const std::string &text);

using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool>;

std::string render_cell(const Cell &cell);

/// A rectangular result plus its JSON form. When `json` is null the JSON
/// output is an array with one object per row.
struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Json json;

    void add_row(std::vector<Cell> row) {
        rows.push_back(std::move(row));
    }
};

void render(const Report &report, Format format, std::ostream &out);

}  // namespace pomlab::cli
