#include "flowlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "flowlab/errors.hpp"

namespace flowlab {
namespace io {

std::string real17(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

[[noreturn]] void parse_fail(long line, const std::string& what) {
  throw DataError("csv parse error at line " + std::to_string(line) + ": " + what);
}

// Pull `key=<number>` out of a header line. Keys are unique per line.
double header_value(const std::string& line, const std::string& key, long lineno) {
  auto pos = line.find(key + "=");
  if (pos == std::string::npos) parse_fail(lineno, "missing `" + key + "=`");
  const char* start = line.c_str() + pos + key.size() + 1;
  char* end = nullptr;
  double v = std::strtod(start, &end);
  if (end == start) parse_fail(lineno, "unreadable value for `" + key + "`");
  return v;
}

std::vector<double> split_row(const std::string& line, long lineno) {
  std::vector<double> out;
  const char* p = line.c_str();
  while (*p) {
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p) parse_fail(lineno, "unreadable number in row");
    out.push_back(v);
    p = end;
    while (*p == ' ' || *p == '\t') ++p;
    if (*p == ',') ++p;
  }
  return out;
}

struct LineReader {
  std::istream& is;
  long lineno = 0;
  std::string line;
  bool pending = false;

  bool next() {
    if (pending) {
      pending = false;
      return true;
    }
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.rfind("# config:", 0) == 0) continue;  // embedded run config
      if (!line.empty()) return true;
    }
    return false;
  }
  void push_back() { pending = true; }
};

VectorField read_field_block(LineReader& r) {
  if (!r.next() || r.line.rfind("# grid:", 0) != 0)
    parse_fail(r.lineno, "expected `# grid:` header");
  long hline = r.lineno;
  int dim = static_cast<int>(header_value(r.line, "dim", hline));
  int n = static_cast<int>(header_value(r.line, "N", hline));
  Real period = header_value(r.line, "L", hline);
  Real t = header_value(r.line, "t", hline);

  TorusGrid g(dim, n, period);
  VectorField f(g, t);
  if (!r.next()) parse_fail(r.lineno, "missing column line");
  // Column-name line; content is informational only.
  Index rows = g.node_count();
  for (Index row = 0; row < rows; ++row) {
    if (!r.next()) parse_fail(r.lineno, "truncated field block");
    auto vals = split_row(r.line, r.lineno);
    if (static_cast<int>(vals.size()) != 2 * dim)
      parse_fail(r.lineno, "expected " + std::to_string(2 * dim) + " columns");
    Eigen::Array<Index, 3, 1> idx;
    idx.setZero();
    for (int d = 0; d < dim; ++d) {
      idx[d] = static_cast<Index>(vals[d]);
      if (idx[d] < 0 || idx[d] >= n) parse_fail(r.lineno, "node index out of range");
    }
    Index flat = g.flat(idx[0], idx[1], idx[2]);
    for (int d = 0; d < dim; ++d) f.comp[d][flat] = vals[dim + d];
  }
  return f;
}

}  // namespace

void write_field_csv(std::ostream& os, const VectorField& f) {
  const TorusGrid& g = f.grid;
  os << "# grid: dim=" << g.dim << ", N=" << g.n << ", L=" << real17(g.period)
     << ", t=" << real17(f.time) << "\n";
  for (int d = 0; d < g.dim; ++d) os << "i" << d << ",";
  for (int d = 0; d < g.dim; ++d) os << "u" << d << (d + 1 < g.dim ? "," : "\n");
  Index rows = g.node_count();
  for (Index row = 0; row < rows; ++row) {
    auto idx = g.unflat(row);
    for (int d = 0; d < g.dim; ++d) os << idx[d] << ",";
    for (int d = 0; d < g.dim; ++d)
      os << real17(f.comp[d][row]) << (d + 1 < g.dim ? "," : "\n");
  }
}

VectorField read_field_csv(std::istream& is) {
  LineReader r{is};
  return read_field_block(r);
}

void write_trajectory_csv(std::ostream& os, const mild::Trajectory& traj) {
  os << "# trajectory: count=" << traj.count() << ", dt=" << real17(traj.dt)
     << ", scheme=" << traj.scheme << "\n";
  for (const auto& snap : traj.snaps) write_field_csv(os, snap);
}

mild::Trajectory read_trajectory_csv(std::istream& is) {
  LineReader r{is};
  if (!r.next() || r.line.rfind("# trajectory:", 0) != 0)
    parse_fail(r.lineno, "expected `# trajectory:` header");
  long hline = r.lineno;
  Index count = static_cast<Index>(header_value(r.line, "count", hline));
  Real dt = header_value(r.line, "dt", hline);
  std::string scheme;
  if (auto pos = r.line.find("scheme="); pos != std::string::npos)
    scheme = r.line.substr(pos + 7);

  mild::Trajectory traj;
  traj.dt = dt;
  traj.scheme = scheme;
  for (Index jj = 0; jj < count; ++jj) traj.snaps.push_back(read_field_block(r));
  mild::validate(traj);
  return traj;
}

void write_trace_csv(std::ostream& os, const blowup::BlowupTrace& trace) {
  os << "t,h\n";
  for (size_t j = 0; j < trace.times.size(); ++j)
    os << real17(trace.times[j]) << "," << real17(trace.h[j]) << "\n";
}

blowup::BlowupTrace read_trace_csv(std::istream& is) {
  LineReader r{is};
  std::vector<Real> times, h;
  while (r.next()) {
    if (r.line[0] == '#') continue;
    if (r.line.rfind("t,", 0) == 0) continue;  // column names
    auto vals = split_row(r.line, r.lineno);
    if (vals.size() < 2) parse_fail(r.lineno, "expected at least t,h columns");
    times.push_back(vals[0]);
    h.push_back(vals[1]);
  }
  if (times.empty()) throw DataError("trace csv holds no rows");
  return blowup::trace_from_series(times, h);
}

void save_text(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << body;
  if (!os) throw DataError("write failed: " + path);
}

std::string load_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace io
}  // namespace flowlab
