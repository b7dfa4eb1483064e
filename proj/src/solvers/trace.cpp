#include <cstdio>
#include <ostream>

#include "aspatp/errors.hpp"
#include "aspatp/solvers.hpp"

namespace aspatp::solvers {

namespace {
std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::pair<double, std::size_t> SolverTrace::min_error() const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (const TraceRow& r : rows) {
    if (!r.rel_error) throw InvalidArgument("trace has no error column");
    if (*r.rel_error < best) {
      best = *r.rel_error;
      at = r.m;
    }
  }
  return {best, at};
}

double SolverTrace::final_error() const {
  if (rows.empty() || !rows.back().rel_error) throw InvalidArgument("trace has no error column");
  return *rows.back().rel_error;
}

void write_trace_csv(const SolverTrace& t, std::ostream& os) {
  os << "m,rel_error,residual,flops\n";
  for (const TraceRow& r : t.rows) {
    os << r.m << ',' << (r.rel_error ? real(*r.rel_error) : "") << ',' << real(r.residual) << ',' << real(r.flops)
       << '\n';
  }
}

}  // namespace aspatp::solvers
