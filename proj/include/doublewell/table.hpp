#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dw {

// Column-ordered table with byte-stable CSV output (17 significant digits,
// "inf" literal, LF endings) and a JSON mirror (columns as arrays).
class Table {
  public:
    using Cell = std::variant<double, std::int64_t, std::string>;

    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row);
    std::size_t n_rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    static std::string format_double(double v);

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace dw
