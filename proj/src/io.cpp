#include "gegd/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gegd/support.hpp"

namespace gegd {

void write_design_pgm(const FeasibleDesign& design, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BackendError("cannot open for writing: " + path);
  f << "P2\n" << design.cols << " " << design.rows << "\n1\n";
  for (int r = 0; r < design.rows; ++r) {
    for (int c = 0; c < design.cols; ++c) {
      if (c) f << ' ';
      f << int(design.cells[r * design.cols + c]);
    }
    f << '\n';
  }
}

FeasibleDesign read_design_pgm(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw BackendError("cannot open: " + path);
  std::string magic;
  f >> magic;
  if (magic != "P2" && magic != "P5") throw BackendError("not a PGM file: " + path);
  auto skip_comments = [&] {
    f >> std::ws;
    while (f.peek() == '#') {
      std::string line;
      std::getline(f, line);
      f >> std::ws;
    }
  };
  int cols = 0, rows = 0, maxval = 0;
  skip_comments();
  f >> cols;
  skip_comments();
  f >> rows;
  skip_comments();
  f >> maxval;
  if (cols < 1 || rows < 1 || maxval < 1) throw BackendError("malformed PGM header: " + path);
  FeasibleDesign d;
  d.rows = rows;
  d.cols = cols;
  d.cells.resize(size_t(rows) * cols);
  if (magic == "P2") {
    for (auto& cell : d.cells) {
      int v;
      if (!(f >> v)) throw BackendError("truncated PGM: " + path);
      cell = v > maxval / 2 ? 1 : 0;
    }
  } else {
    f.get();  // single whitespace after maxval
    for (auto& cell : d.cells) {
      const int v = f.get();
      if (v == EOF) throw BackendError("truncated PGM: " + path);
      cell = v > maxval / 2 ? 1 : 0;
    }
  }
  return d;
}

void write_design_csv(const FeasibleDesign& design, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BackendError("cannot open for writing: " + path);
  for (int r = 0; r < design.rows; ++r) {
    for (int c = 0; c < design.cols; ++c) {
      if (c) f << ',';
      f << int(design.cells[r * design.cols + c]);
    }
    f << '\n';
  }
}

FeasibleDesign read_design_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw BackendError("cannot open: " + path);
  FeasibleDesign d;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    int count = 0;
    for (char ch : line) {
      if (ch == '0' || ch == '1') {
        d.cells.push_back(uint8_t(ch - '0'));
        ++count;
      } else if (ch != ',' && ch != ' ' && ch != '\t' && ch != '\r') {
        throw BackendError("unexpected character in design CSV: " + path);
      }
    }
    if (count == 0) continue;
    if (d.cols == 0) d.cols = count;
    if (count != d.cols) throw BackendError("ragged design CSV: " + path);
    ++d.rows;
  }
  if (d.rows == 0) throw BackendError("empty design CSV: " + path);
  return d;
}

FeasibleDesign read_design(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".pgm") return read_design_pgm(path);
  return read_design_csv(path);
}

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NumericalError("double formatting failed");
  return std::string(buf, ptr);
}

std::string trace_csv(const OptimizationTrace& trace, const std::string& algorithm) {
  std::ostringstream os;
  if (algorithm.empty())
    os << "iteration,ensemble_cost,best_cost,mu_L_norm,eta,M,r_cv,corr\n";
  else
    os << "algorithm,iteration,ensemble_cost,best_cost,mu_L_norm,eta,M,r_cv,corr\n";
  for (const auto& r : trace.records) {
    if (!algorithm.empty()) os << algorithm << ',';
    os << r.iteration << ',' << format_double(r.ensemble_cost) << ','
       << format_double(r.best_cost) << ',' << format_double(r.mu_norm) << ','
       << format_double(r.eta) << ',' << r.m << ',' << r.r_cv << ','
       << format_double(r.corr) << '\n';
  }
  return os.str();
}

void write_trace_csv(const OptimizationTrace& trace, const std::string& path,
                     const std::string& algorithm) {
  write_text_file(path, trace_csv(trace, algorithm));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BackendError("cannot open for writing: " + path);
  f << content;
}

}  // namespace gegd
