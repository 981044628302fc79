// CSV and fixed-width table rendering of study rows.
#ifndef FEM4SP_OUTPUT_HPP
#define FEM4SP_OUTPUT_HPP

#include "fem4sp/study.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace fem4sp {

enum class OutputFormat { Csv, Table };

OutputFormat parse_output_format(std::string_view name);

inline constexpr std::string_view kCsvHeader =
    "element,example,mode,scheme,epsilon,n,h,ndof,rel_energy_error,rate";

void write_csv(std::span<const StudyRow> rows, std::ostream& out);

/// One line per eps group (Poisson / Biharmonic labels for the limit modes),
/// one column per h, trailing rate.
void write_table(std::span<const StudyRow> rows, std::ostream& out);

void write_rows(std::span<const StudyRow> rows, OutputFormat format, std::ostream& out);

/// Writes to path ("-" for stdout). Throws std::invalid_argument for empty
/// rows (no file is created) and std::runtime_error when the file cannot be
/// written.
void write_output(std::span<const StudyRow> rows, OutputFormat format, const std::string& path);

}  // namespace fem4sp

#endif  // FEM4SP_OUTPUT_HPP
