#pragma once

// Executes configured runs and sweeps, compares against references, and
// writes solution CSVs and JSON run records.
//
// Solution CSV: header "x,re,im", one row per grid point, doubles in shortest
// round-trip form. Real-valued models write im = 0.
//
// Run record (one JSON object per cell; a sweep writes a sorted array):
//   cell, cell_index     sweep cell label and cross-product index
//   config               the cell's configuration
//   steps, cg_iterations, wall_seconds, blow_up
//   failure              numerical failure message, present only on failure
//   window               [lo, hi] comparison window
//   reference            reference description, present only when configured
//   max_window_error     max |q - q_ref| over the window, present only when a
//   error_at_x           reference is configured and the run succeeded
//   outputs              [{path, sha256, bytes}] for every file written

#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdamp/harness/config.hpp"
#include "sdamp/spectral.hpp"

namespace sdamp::harness {

struct OutputFile {
  std::string path;
  std::string sha256;
  std::size_t bytes = 0;
  bool operator==(const OutputFile&) const = default;
};

struct RunRecord {
  std::string cell;
  std::vector<std::size_t> cell_index;
  RunConfig config;
  WindowSpec window;
  std::string reference;
  std::optional<double> max_window_error;
  std::optional<double> error_at_x;
  double wall_seconds = 0.0;
  std::size_t steps = 0;
  std::size_t cg_iterations = 0;
  bool blow_up = false;
  std::optional<std::string> failure;
  std::vector<OutputFile> outputs;

  bool failed() const { return failure.has_value(); }
};

json to_json(const RunRecord& r, bool include_timing = true);

struct RunOutcome {
  RunRecord record;
  std::optional<Grid> grid;
  CVec samples;  // physical q at t_final; empty on failure
};

// Reference solutions shared between sweep cells; the first requester of a
// key computes it while the others wait.
class ReferenceCache {
 public:
  struct Entry {
    Grid grid;
    CVec samples;             // physical q
    std::optional<SpectralField> field;  // for interpolation (periodic models)
  };
  std::shared_ptr<const Entry> get(const std::string& key, const std::function<Entry()>& compute);

 private:
  std::mutex mu_;
  std::map<std::string, std::shared_future<std::shared_ptr<const Entry>>> entries_;
};

// One evolution plus reference comparison. Numerical failures are captured in
// the record; configuration and I/O errors throw.
RunOutcome run_cell(const RunConfig& cfg, const std::string& label = "",
                    const std::vector<std::size_t>& index = {}, ReferenceCache* cache = nullptr);

// Expands the sweep and runs the cells on `workers` threads. Records come back
// sorted by cell index. When cfg.out_dir is set the records are also written
// to <out_dir>/<name>.records.json (<name>.record.json for a single cell).
std::vector<RunRecord> run_sweep(const RunConfig& cfg, std::size_t workers);

// 0 when every record succeeded, 3 otherwise.
int exit_code(const std::vector<RunRecord>& records);

std::string format_solution_csv(const Grid& grid, std::span<const cplx> samples);
// Writes the CSV and returns its digest. Throws IoError.
OutputFile emit_solution(const Grid& grid, std::span<const cplx> samples, const std::string& path);

struct SolutionTable {
  std::vector<double> x;
  CVec q;
};
// Throws IoError (unreadable) or ConfigError (malformed).
SolutionTable read_solution_csv(const std::string& path);

std::string sha256_hex(std::string_view bytes);
std::string solution_path(const RunConfig& cfg, const std::string& label);

}  // namespace sdamp::harness
