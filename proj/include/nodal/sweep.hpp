#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nodal/scalar.hpp"

namespace nodal {

using OutcomeValue = std::variant<long, bool, std::string>;

// One persisted result row.  (command, spec fields, field, seed) is the
// unique key; files holding these rows are append-only.
struct SweepRecord {
  std::string command;
  std::optional<long> d, n, l, h, k;
  std::string field;  // "p=<modulus>" or "rational"
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, OutcomeValue>> outcome;
  long ms = 0;
  std::string version;
  std::string timestamp;

  bool operator==(const SweepRecord&) const = default;
};

std::string record_key(const SweepRecord& r);
std::string serialize(const SweepRecord& r);        // one JSON line
SweepRecord parse_record(const std::string& line);  // inverse of serialize

std::vector<SweepRecord> read_records(const std::string& path);

// Appends the records whose keys are absent from the file, in order.
// Returns the number appended.
long append_records(const std::string& path,
                    const std::vector<SweepRecord>& records);

struct GridRange {
  long lo = 0;
  long hi = 0;  // inclusive

  long span() const { return hi - lo + 1; }
};

struct RunConfig {
  GridRange d{3, 3};
  GridRange n{2, 2};
  GridRange l{0, 0};
  GridRange h{0, 0};
  int trials = 3;
  std::vector<std::uint64_t> primes = default_primes();
  std::uint64_t seed = 1;
  std::string out = "sweep.jsonl";
  std::string mode = "prime";  // prime | rational | both
};

// Flat "key = value" text; ranges written "lo..hi" or as a single value;
// '#' starts a comment.  Keys: d n l h trials seed mode out primes.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);
void validate(const RunConfig& c);

std::vector<std::uint64_t> parse_primes(const std::string& csv);

// "lo..hi" or a single value, as used for the config grid keys
GridRange parse_grid_range(const std::string& text);

// Prime list for oracle runs: the override from the environment variable
// NODAL_PRIMES (comma-separated decimals) when set, the default otherwise.
std::vector<std::uint64_t> env_primes();

struct SweepSummary {
  long cells = 0;    // grid cells visited
  long written = 0;  // records appended
  long skipped = 0;  // keys already present
  long errors = 0;   // failures captured in per-cell records
};

// Runs the configured grid: one record per (cell, field, seed), computed in
// parallel, appended in deterministic grid order.  Re-runs skip keys that
// are already in the output file.  Cell failures become records carrying an
// "error" outcome and never abort the sweep.
SweepSummary run_sweep(const RunConfig& config);

std::string utc_timestamp();

}  // namespace nodal
