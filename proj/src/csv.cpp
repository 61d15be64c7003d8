#include "spingate/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spingate/errors.hpp"

namespace spingate {

namespace {

void populationHeader(std::ostream& os, std::size_t dimension) {
  if (dimension == 2) os << ",p0,p1";
  else if (dimension == 4) os << ",p00,p01,p10,p11";
  else {
    for (std::size_t i = 0; i < dimension; ++i) os << ",p" << i;
  }
}

template <class Writer>
void writeFile(const std::string& path, Writer&& write) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

}  // namespace

std::string formatNumber(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);  // shortest round-trip
  return std::string(buf, res.ptr);
}

void writeSweepCsv(std::ostream& os, const SweepResult& result) {
  if (result.rows.empty()) throw ContractViolation("cannot write an empty sweep");
  os << "delta_2piMHz,M1,M2,M3";
  populationHeader(os, result.rows.front().populations.size());
  os << '\n';
  for (const auto& row : result.rows) {
    os << formatNumber(row.delta.twoPiMHz()) << ',' << formatNumber(row.fidelity.overlapVsReference)
       << ',' << formatNumber(row.fidelity.bhattacharyyaVsIdeal) << ','
       << formatNumber(row.fidelity.targetPopulation);
    for (double p : row.populations) os << ',' << formatNumber(p);
    os << '\n';
  }
}

void writeTrajectoryCsv(std::ostream& os, const Trajectory& trajectory) {
  if (trajectory.empty()) throw ContractViolation("cannot write an empty trajectory");
  os << "t_us,norm";
  populationHeader(os, trajectory.states.front().size());
  os << '\n';
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    os << formatNumber(trajectory.times[i]) << ',' << formatNumber(trajectory.norms[i]);
    for (const auto& a : trajectory.states[i]) os << ',' << formatNumber(std::norm(a));
    os << '\n';
  }
}

void writeSweepCsv(const std::string& path, const SweepResult& result) {
  writeFile(path, [&](std::ostream& os) { writeSweepCsv(os, result); });
}

void writeTrajectoryCsv(const std::string& path, const Trajectory& trajectory) {
  writeFile(path, [&](std::ostream& os) { writeTrajectoryCsv(os, trajectory); });
}

std::string gnuplotScript(const std::string& csvPath, bool sweep, std::size_t dimension) {
  static const char* oneQubit[] = {"p0", "p1"};
  static const char* twoQubit[] = {"p00", "p01", "p10", "p11"};
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key outside right\n"
     << "set grid\n";
  if (sweep) {
    os << "set xlabel 'delta (2pi MHz)'\nset ylabel 'fidelity / population'\n"
       << "plot '" << csvPath << "' using 1:2 with lines title 'M1', \\\n"
       << "     '' using 1:3 with lines title 'M2', \\\n"
       << "     '' using 1:4 with lines title 'M3'";
    for (std::size_t i = 0; i < dimension; ++i) {
      os << ", \\\n     '' using 1:" << 5 + i << " with lines dt 2 title '"
         << (dimension == 2 ? oneQubit[i] : twoQubit[i]) << "'";
    }
  } else {
    os << "set xlabel 't (us)'\nset ylabel 'population'\n"
       << "plot '" << csvPath << "' using 1:2 with lines title 'norm'";
    for (std::size_t i = 0; i < dimension; ++i) {
      os << ", \\\n     '' using 1:" << 3 + i << " with lines title '"
         << (dimension == 2 ? oneQubit[i] : twoQubit[i]) << "'";
    }
  }
  os << "\npause mouse close\n";
  return os.str();
}

}  // namespace spingate
