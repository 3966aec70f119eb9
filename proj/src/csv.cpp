#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "irs/experiment.hpp"

namespace irs {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_csv(std::ostream& out, const ExperimentTable& table) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.rows) {
    out << to_string(table.kind) << ',' << to_string(r.scheme) << ',' << r.b << ',' << r.sweep_param << ','
        << format_number(r.sweep_value) << ',' << format_number(r.mean_rate) << ',' << format_number(r.mean_mse)
        << ',' << format_number(r.stderr_rate) << ',' << r.trials << ',' << table.seed << '\n';
  }
}

std::string to_csv(const ExperimentTable& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

}  // namespace irs
