#pragma once

#include <iosfwd>
#include <string>

#include "spingate/sweep.hpp"

namespace spingate {

/// Locale-independent shortest text that round-trips exactly.
std::string formatNumber(double value);

/// Header `delta_2piMHz,M1,M2,M3,p0,p1` (or `p00,p01,p10,p11`), then one line per row.
void writeSweepCsv(std::ostream& os, const SweepResult& result);
/// Header `t_us,norm,p0,p1` (or the four two-qubit populations); `norm` is sum |a|^2.
void writeTrajectoryCsv(std::ostream& os, const Trajectory& trajectory);

// File variants; throw IoError if the destination cannot be written.
void writeSweepCsv(const std::string& path, const SweepResult& result);
void writeTrajectoryCsv(const std::string& path, const Trajectory& trajectory);

/// gnuplot script plotting a CSV written by the functions above.
std::string gnuplotScript(const std::string& csvPath, bool sweep, std::size_t dimension);

}  // namespace spingate
