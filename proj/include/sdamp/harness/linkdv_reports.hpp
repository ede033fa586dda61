#pragma once

// Batch reports over the linearized-KdV analysis: the damped-solver vs
// heuristic table and a sweep checking the lattice-sum error bounds.

#include <cstddef>
#include <string>
#include <vector>

#include "sdamp/harness/config.hpp"
#include "sdamp/linkdv_analysis.hpp"

namespace sdamp::harness {

struct Table2Row {
  double L = 0.0;
  std::size_t m = 0;
  double published = 0.0;  // reported max difference for this row
  linkdv::FidelityResult result;

  double ratio() const { return result.max_difference / published; }
  bool within_factor_two() const { return ratio() >= 0.5 && ratio() <= 2.0; }
};

struct Table2Spec {
  double L;
  std::size_t m;
  double published;
};
// (100, 2^9, 0.02), (200, 2^10, 0.01), (600, 2^12, 0.007), (1200, 2^13, 0.003)
const std::vector<Table2Spec>& table2_rows();

// Runs the selected rows (all when `rows` is empty) on `workers` threads.
std::vector<Table2Row> run_table2(std::size_t workers, std::vector<std::size_t> rows = {},
                                  double t = 150.0);
json to_json(const Table2Row& row);

struct BoundsPoint {
  double L = 0.0;
  double t = 0.0;
  double P = 0.0;
  double R = 0.0;
  double delta = 0.0;
  double undamped_measured = 0.0;  // max |exact - undamped lattice sum| on |x| <= R
  double undamped_bound = 0.0;     // capitalQ_bound
  double tail_measured = 0.0;      // max |exact - damped whole-line integral|
  double tail_bound = 0.0;
  double lattice_measured = 0.0;   // max |damped line - damped lattice| (informational)
  double lattice_bound = 0.0;

  bool undamped_ok() const { return undamped_measured <= 10.0 * undamped_bound; }
  bool tail_ok() const { return tail_measured <= tail_bound; }
};

std::vector<BoundsPoint> run_bounds_sweep(const std::vector<double>& Ls,
                                          const std::vector<double>& ts, double delta = 0.25,
                                          std::size_t samples = 21);
json to_json(const BoundsPoint& p);

struct TrapezoidCheck {
  std::string integrand;
  double a = 0.0;
  double step = 0.0;  // N for the periodic rule, h for the whole-line rule
  double measured = 0.0;
  double bound = 0.0;
  bool ok() const { return measured <= bound; }
};

// exp(sin theta) over one period and exp(-k^2) over the line, against their
// exact values, for several strip widths and resolutions.
std::vector<TrapezoidCheck> run_trapezoid_checks();
json to_json(const TrapezoidCheck& c);

}  // namespace sdamp::harness
