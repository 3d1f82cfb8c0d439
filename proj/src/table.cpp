#include "doublewell/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace dw {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::invalid_argument("Table: row width mismatch");
    rows_.push_back(std::move(row));
}

std::string Table::format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::write_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns_.size(); ++c)
        os << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_double(v);
                    else
                        os << v;
                },
                row[c]);
            os << (c + 1 < row.size() ? "," : "\n");
        }
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::json j;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& row : rows_) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v))
                            col.push_back(v);
                        else
                            col.push_back(format_double(v));  // JSON has no inf
                    } else {
                        col.push_back(v);
                    }
                },
                row[c]);
        }
        j[columns_[c]] = std::move(col);
    }
    os << j.dump(2) << "\n";
}

}  // namespace dw
