#include "nodal/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "nodal/interpolation.hpp"
#include "nodal/probes.hpp"
#include "nodal/version.hpp"

namespace nodal {

using nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long parse_long(const std::string& key, const std::string& val) {
  try {
    std::size_t pos = 0;
    long v = std::stol(val, &pos);
    if (pos != val.size()) throw std::invalid_argument(val);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for '" + key + "': " + val);
  }
}

GridRange parse_range(const std::string& key, const std::string& val) {
  std::size_t pos = val.find("..");
  if (pos == std::string::npos) {
    long v = parse_long(key, val);
    return {v, v};
  }
  long lo = parse_long(key, trim(val.substr(0, pos)));
  long hi = parse_long(key, trim(val.substr(pos + 2)));
  return {lo, hi};
}

void put_outcome(ordered_json& obj, const SweepRecord& r) {
  ordered_json o = ordered_json::object();
  for (const auto& [key, value] : r.outcome) {
    std::visit([&](const auto& v) { o[key] = v; }, value);
  }
  obj["outcome"] = o;
}

}  // namespace

std::string record_key(const SweepRecord& r) {
  std::string key = r.command;
  auto add = [&](const char* name, const std::optional<long>& v) {
    if (v) key += std::string("|") + name + "=" + std::to_string(*v);
  };
  add("d", r.d);
  add("n", r.n);
  add("l", r.l);
  add("h", r.h);
  add("k", r.k);
  key += "|" + r.field + "|" + std::to_string(r.seed);
  return key;
}

std::string serialize(const SweepRecord& r) {
  ordered_json j;
  j["command"] = r.command;
  if (r.d) j["d"] = *r.d;
  if (r.n) j["n"] = *r.n;
  if (r.l) j["l"] = *r.l;
  if (r.h) j["h"] = *r.h;
  if (r.k) j["k"] = *r.k;
  j["field"] = r.field;
  j["seed"] = r.seed;
  put_outcome(j, r);
  j["ms"] = r.ms;
  j["version"] = r.version;
  j["timestamp"] = r.timestamp;
  return j.dump();
}

SweepRecord parse_record(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("record: malformed JSON: ") +
                             e.what());
  }
  SweepRecord r;
  r.command = j.at("command").get<std::string>();
  auto opt = [&](const char* name) -> std::optional<long> {
    if (!j.contains(name)) return std::nullopt;
    return j.at(name).get<long>();
  };
  r.d = opt("d");
  r.n = opt("n");
  r.l = opt("l");
  r.h = opt("h");
  r.k = opt("k");
  r.field = j.at("field").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& [key, value] : j.at("outcome").items()) {
    if (value.is_boolean()) {
      r.outcome.emplace_back(key, value.get<bool>());
    } else if (value.is_number_integer()) {
      r.outcome.emplace_back(key, value.get<long>());
    } else if (value.is_string()) {
      r.outcome.emplace_back(key, value.get<std::string>());
    } else {
      throw std::runtime_error("record: unsupported outcome value for '" +
                               key + "'");
    }
  }
  r.ms = j.at("ms").get<long>();
  r.version = j.at("version").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  return r;
}

std::vector<SweepRecord> read_records(const std::string& path) {
  std::vector<SweepRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    out.push_back(parse_record(line));
  }
  return out;
}

long append_records(const std::string& path,
                    const std::vector<SweepRecord>& records) {
  std::unordered_set<std::string> keys;
  for (const auto& r : read_records(path)) keys.insert(record_key(r));
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open for append: " + path);
  long written = 0;
  for (const auto& r : records) {
    if (!keys.insert(record_key(r)).second) continue;
    out << serialize(r) << "\n";
    ++written;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
  return written;
}

RunConfig parse_run_config(std::istream& in) {
  RunConfig c;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected 'key = value': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "d") {
      c.d = parse_range(key, val);
    } else if (key == "n") {
      c.n = parse_range(key, val);
    } else if (key == "l") {
      c.l = parse_range(key, val);
    } else if (key == "h") {
      c.h = parse_range(key, val);
    } else if (key == "trials") {
      c.trials = static_cast<int>(parse_long(key, val));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_long(key, val));
    } else if (key == "mode") {
      c.mode = val;
    } else if (key == "out") {
      c.out = val;
    } else if (key == "primes") {
      c.primes = parse_primes(val);
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config: " + path);
  return parse_run_config(in);
}

void validate(const RunConfig& c) {
  auto check_range = [](const char* name, const GridRange& r, long min_lo) {
    if (r.hi < r.lo)
      throw std::runtime_error(std::string("config: empty range for ") + name);
    if (r.lo < min_lo)
      throw std::runtime_error(std::string("config: range too low for ") +
                               name);
  };
  check_range("d", c.d, 1);
  check_range("n", c.n, 1);
  check_range("l", c.l, 0);
  check_range("h", c.h, 0);
  if (c.trials < 1) throw std::runtime_error("config: trials must be >= 1");
  if (c.mode != "prime" && c.mode != "rational" && c.mode != "both")
    throw std::runtime_error("config: mode must be prime, rational, or both");
  if (c.mode != "rational") {
    if (c.primes.empty()) throw std::runtime_error("config: no primes");
    for (std::uint64_t p : c.primes)
      if (p <= static_cast<std::uint64_t>(c.d.hi))
        throw std::runtime_error(
            "config: prime " + std::to_string(p) +
            " does not exceed the top degree of the grid");
  }
  if (c.out.empty()) throw std::runtime_error("config: empty output path");
}

GridRange parse_grid_range(const std::string& text) {
  return parse_range("range", trim(text));
}

std::vector<std::uint64_t> parse_primes(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(v));
    } catch (const std::exception&) {
      throw std::runtime_error("bad prime list entry: " + item);
    }
  }
  if (out.empty()) throw std::runtime_error("empty prime list");
  return out;
}

std::vector<std::uint64_t> env_primes() {
  const char* env = std::getenv("NODAL_PRIMES");
  if (env == nullptr || *env == '\0') return default_primes();
  return parse_primes(env);
}

std::string utc_timestamp() {
  std::time_t tt = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

struct SweepJob {
  SpecializedSpec spec;
  std::optional<std::uint64_t> prime;  // absent = rational arithmetic
  std::uint64_t seed = 0;
};

// Singular-locus survey of one random member, attached to dims records for
// plane-curve and threefold cells.
template <class Field>
void member_outcome(const Field& field, const SweepJob& job, SweepRecord& rec) {
  PointConfig<Field> cfg = sample_config(field, job.spec, job.seed);
  auto member = random_member(field, job.spec.base.d, cfg, job.seed);
  SingularityReport srep =
      singularity_scan(member, cfg.all_points(), 6, job.seed);
  rec.outcome.emplace_back("nodes", srep.all_nodes);
  rec.outcome.emplace_back("sing", std::string(to_string(srep.finiteness)));
}

SweepRecord compute_record(const SweepJob& job) {
  SweepRecord rec;
  rec.command = "dims";
  rec.d = job.spec.base.d;
  rec.n = job.spec.base.n;
  rec.l = job.spec.base.l;
  if (job.spec.h > 0) rec.h = job.spec.h;
  rec.field = job.prime ? "p=" + std::to_string(*job.prime)
                        : std::string("rational");
  rec.seed = job.seed;
  rec.version = kVersion;
  auto t0 = std::chrono::steady_clock::now();
  try {
    OracleOptions opt;
    opt.trials = 1;
    opt.seed = job.seed;
    if (job.prime) {
      opt.mode = FieldMode::prime;
      opt.primes = {*job.prime};
    } else {
      opt.mode = FieldMode::rational;
    }
    DimReport rep = specialized_dim(job.spec, opt);
    rec.outcome.emplace_back("expected",
                             static_cast<long>(rep.expected.get_si()));
    rec.outcome.emplace_back("actual", rep.actual);
    rec.outcome.emplace_back("agreement", rep.agreement);
    const auto& base = job.spec.base;
    bool probe = rep.actual >= 0 && base.l >= 1 && base.d >= 2 &&
                 (base.n == 2 || base.n == 3);
    if (probe) {
      if (job.prime) {
        member_outcome(PrimeField(*job.prime), job, rec);
      } else {
        member_outcome(RationalField{}, job, rec);
      }
    }
  } catch (const std::exception& e) {
    rec.outcome.clear();
    rec.outcome.emplace_back("error", std::string(e.what()));
  }
  rec.ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - t0)
          .count());
  rec.timestamp = utc_timestamp();
  return rec;
}

}  // namespace

SweepSummary run_sweep(const RunConfig& config) {
  validate(config);

  std::vector<SweepJob> jobs;
  SweepSummary summary;
  for (long d = config.d.lo; d <= config.d.hi; ++d) {
    for (long n = config.n.lo; n <= config.n.hi; ++n) {
      for (long l = config.l.lo; l <= config.l.hi; ++l) {
        for (long h = config.h.lo; h <= config.h.hi; ++h) {
          SpecializedSpec spec{{d, n, l}, h};
          try {
            validate(spec);
          } catch (const std::exception&) {
            continue;  // cell outside the spec shape (e.g. h > l)
          }
          ++summary.cells;
          for (int t = 0; t < config.trials; ++t) {
            std::uint64_t seed =
                Rng::mix(config.seed, static_cast<std::uint64_t>(t));
            if (config.mode != "rational") {
              for (std::uint64_t p : config.primes)
                jobs.push_back({spec, p, seed});
            }
            if (config.mode != "prime") {
              jobs.push_back({spec, std::nullopt, seed});
            }
          }
        }
      }
    }
  }

  std::unordered_set<std::string> existing;
  for (const auto& r : read_records(config.out))
    existing.insert(record_key(r));

  std::vector<char> skip(jobs.size(), 0);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    SweepRecord probe;
    probe.command = "dims";
    probe.d = jobs[i].spec.base.d;
    probe.n = jobs[i].spec.base.n;
    probe.l = jobs[i].spec.base.l;
    if (jobs[i].spec.h > 0) probe.h = jobs[i].spec.h;
    probe.field = jobs[i].prime ? "p=" + std::to_string(*jobs[i].prime)
                                : std::string("rational");
    probe.seed = jobs[i].seed;
    if (existing.count(record_key(probe))) skip[i] = 1;
  }

  std::vector<std::optional<SweepRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      if (!skip[i]) results[i] = compute_record(jobs[i]);
    }
  };
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads =
      std::min<std::size_t>(std::max(1u, hw), std::max<std::size_t>(
                                                  1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<SweepRecord> fresh;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (skip[i]) {
      ++summary.skipped;
      continue;
    }
    const SweepRecord& r = *results[i];
    if (!r.outcome.empty() && r.outcome.front().first == "error")
      ++summary.errors;
    fresh.push_back(r);
  }
  summary.written = append_records(config.out, fresh);
  return summary;
}

}  // namespace nodal
