#ifndef PVSCORE_CLI_CSV_HPP
#define PVSCORE_CLI_CSV_HPP

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pvscore/point_set.hpp"

namespace pvscore::cli {

/// Unreadable or malformed input data (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses one point per row, comma separated, '.' as the decimal separator
/// regardless of locale. A first row with any non-numeric cell is a header.
/// Blank lines are skipped. Throws InputError on ragged rows, non-numeric or
/// non-finite cells, or when no data rows remain.
PointSet parse_csv(std::string_view text, std::string_view source_name = "<input>");

PointSet read_csv(const std::filesystem::path& path);

}  // namespace pvscore::cli

#endif  // PVSCORE_CLI_CSV_HPP
