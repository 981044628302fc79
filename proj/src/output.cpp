#include "fem4sp/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fem4sp {

namespace {

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string group_label(const StudyRow& r) {
  switch (r.mode) {
    case Mode::Poisson: return "Poisson";
    case Mode::Biharmonic: return "Biharmonic";
    case Mode::Full: break;
  }
  return format_epsilon(r.epsilon);
}

bool same_group(const StudyRow& a, const StudyRow& b) {
  return a.mode == b.mode && (a.mode != Mode::Full || a.epsilon == b.epsilon);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "table") return OutputFormat::Table;
  throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

void write_csv(std::span<const StudyRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const StudyRow& r : rows) {
    out << to_string(r.element) << ',' << to_string(r.example) << ',' << to_string(r.mode) << ','
        << to_string(r.scheme) << ',' << (r.mode == Mode::Full ? sig6(r.epsilon) : std::string()) << ',' << r.n
        << ',' << sig6(r.h) << ',' << r.free_dofs << ',' << sig6(r.relative_error) << ','
        << (r.rate ? sig6(*r.rate) : std::string()) << '\n';
  }
}

void write_table(std::span<const StudyRow> rows, std::ostream& out) {
  std::vector<int> ns;
  for (const StudyRow& r : rows) {
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
  }
  std::sort(ns.begin(), ns.end());

  constexpr std::size_t kLabel = 12;
  constexpr std::size_t kCell = 10;
  out << pad("eps \\ h", kLabel);
  for (int n : ns) out << pad(format_epsilon(1.0 / n), kCell);
  out << "rate\n";

  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && same_group(rows[i], rows[j])) ++j;
    out << pad(group_label(rows[i]), kLabel);
    for (int n : ns) {
      std::string cell = "-";
      for (std::size_t k = i; k < j; ++k) {
        if (rows[k].n == n) cell = fixed(rows[k].relative_error, 4);
      }
      out << pad(cell, kCell);
    }
    out << (rows[i].rate ? fixed(*rows[i].rate, 2) : std::string("-")) << '\n';
    i = j;
  }
}

void write_rows(std::span<const StudyRow> rows, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    write_csv(rows, out);
  } else {
    write_table(rows, out);
  }
}

void write_output(std::span<const StudyRow> rows, OutputFormat format, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("write_output: no rows to write");
  if (path.empty() || path == "-") {
    write_rows(rows, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ostringstream buffer;
  write_rows(rows, format, buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("write_output: cannot open '" + path + "' for writing");
  file << buffer.str();
  if (!file.flush()) throw std::runtime_error("write_output: failed writing '" + path + "'");
}

}  // namespace fem4sp
