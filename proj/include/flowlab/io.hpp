#pragma once

#include <iosfwd>
#include <string>

#include "flowlab/blowup.hpp"
#include "flowlab/mild.hpp"

namespace flowlab {
namespace io {

// 17 significant digits: doubles round-trip exactly through text.
std::string real17(Real v);

// One snapshot: `# grid: dim=.., N=.., L=.., t=..`, a column-name line,
// then one row per node (index tuple, then component values).
void write_field_csv(std::ostream& os, const VectorField& f);
VectorField read_field_csv(std::istream& is);

// A trajectory is a `# trajectory:` line followed by snapshot blocks.
void write_trajectory_csv(std::ostream& os, const mild::Trajectory& traj);
mild::Trajectory read_trajectory_csv(std::istream& is);

// Sup-norm history as `t,h` rows.
void write_trace_csv(std::ostream& os, const blowup::BlowupTrace& trace);
blowup::BlowupTrace read_trace_csv(std::istream& is);

// File helpers; read errors carry the path and line.
void save_text(const std::string& path, const std::string& body);
std::string load_text(const std::string& path);

}  // namespace io
}  // namespace flowlab
