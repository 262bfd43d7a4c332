#include "ffbench/harness.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "ffbench/cnf.hpp"

namespace ffbench {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::string& algorithm,
                        const std::string& problem,
                        const std::string& instance_group) {
  return base_seed ^ fnv1a64(algorithm + "|" + problem + "|" + instance_group);
}

namespace {

struct RunTask {
  AlgorithmId algorithm;
  const Problem* problem;
  std::uint64_t seed;
};

void sort_records(std::vector<RunRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) {
              return std::tie(a.algorithm, a.problem, a.instance, a.seed) <
                     std::tie(b.algorithm, b.problem, b.instance, b.seed);
            });
}

}  // namespace

std::vector<RunRecord> execute(const ExperimentSpec& spec,
                               unsigned parallelism, std::ostream* progress,
                               const std::atomic<bool>* cancel) {
  if (spec.runs_per_cell < 1)
    throw std::invalid_argument("execute: runs_per_cell must be >= 1");
  if (spec.budget < 1)
    throw std::invalid_argument("execute: budget must be >= 1");
  if (spec.algorithms.empty())
    throw std::invalid_argument("execute: no algorithms given");
  if (spec.instances.empty() && !spec.cnf_dir)
    throw std::invalid_argument("execute: no problem instances given");

  // Build every problem up front so bad names or parameters fail before a
  // single run starts; instances are immutable and shared by the workers.
  std::vector<std::unique_ptr<Problem>> problems;
  for (const auto& inst : spec.instances)
    problems.push_back(make_problem(inst.problem, inst.scale, inst.params));
  std::vector<std::unique_ptr<Problem>> sat_problems;
  std::string sat_group;
  if (spec.cnf_dir) {
    const auto files = list_cnf_files(*spec.cnf_dir);
    if (files.empty())
      throw std::invalid_argument("execute: no *.cnf files in " +
                                  spec.cnf_dir->string());
    for (const auto& file : files)
      sat_problems.push_back(std::make_unique<MaxSatProblem>(
          parse_dimacs_file(file), file.filename().string()));
    sat_group = spec.cnf_dir->filename().string();
  }

  std::vector<RunTask> tasks;
  for (const auto id : spec.algorithms) {
    const std::string algo = to_string(id);
    for (const auto& problem : problems) {
      const std::uint64_t seed0 =
          cell_seed(spec.base_seed, algo, problem->name(), problem->instance());
      for (std::uint32_t i = 0; i < spec.runs_per_cell; ++i)
        tasks.push_back({id, problem.get(), seed0 + i});
    }
    if (!sat_problems.empty()) {
      // One cell for the whole directory: run i goes to file i mod |files|,
      // so the runs are exactly uniform over the instances.
      const std::uint64_t seed0 =
          cell_seed(spec.base_seed, algo, "maxsat", sat_group);
      for (std::uint32_t i = 0; i < spec.runs_per_cell; ++i)
        tasks.push_back(
            {id, sat_problems[i % sat_problems.size()].get(), seed0 + i});
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const std::size_t report_every = std::max<std::size_t>(1, tasks.size() / 20);

  const auto worker = [&] {
    for (;;) {
      if (cancel && cancel->load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= tasks.size()) return;
      const RunTask& task = tasks[i];
      const RunResult result =
          run(task.algorithm, *task.problem, task.seed, spec.budget,
              spec.algo_params);
      RunRecord& rec = records[i];
      rec.algorithm = to_string(task.algorithm);
      rec.problem = task.problem->name();
      rec.instance = task.problem->instance();
      rec.scale = task.problem->scale();
      rec.seed = task.seed;
      rec.budget_fes = spec.budget;
      rec.used_fes = result.used_fes;
      rec.best_f = result.best_f;
      rec.success = result.success;
      const std::size_t completed = done.fetch_add(1) + 1;
      if (progress &&
          (completed % report_every == 0 || completed == tasks.size())) {
        const std::lock_guard<std::mutex> lock(progress_mutex);
        *progress << "runs " << completed << "/" << tasks.size() << "\n";
      }
    }
  };

  if (parallelism <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < parallelism; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (cancel && cancel->load()) {
    // Keep only the runs that actually finished.
    std::vector<RunRecord> finished;
    for (auto& rec : records)
      if (!rec.algorithm.empty()) finished.push_back(std::move(rec));
    records = std::move(finished);
  }
  sort_records(records);
  return records;
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out << field;
    return;
  }
  out << '"';
  for (const char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line,
                                        std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) throw CsvParseError("unterminated quote", row);
  fields.push_back(std::move(field));
  return fields;
}

std::uint64_t parse_u64_field(const std::string& text, const char* what,
                              std::size_t row) {
  try {
    std::size_t pos = 0;
    const std::uint64_t value = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing chars");
    return value;
  } catch (const std::exception&) {
    throw CsvParseError(std::string("bad ") + what + " '" + text + "'", row);
  }
}

constexpr const char* kCsvHeader =
    "algorithm,problem,instance,scale,seed,budget_fes,used_fes,best_f,success";

}  // namespace

void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    write_field(out, rec.algorithm);
    out << ',';
    write_field(out, rec.problem);
    out << ',';
    write_field(out, rec.instance);
    out << ',' << rec.scale << ',' << rec.seed << ',' << rec.budget_fes << ','
        << rec.used_fes << ',' << rec.best_f << ','
        << (rec.success ? '1' : '0') << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t row = 0;
  if (!std::getline(in, line)) throw CsvParseError("missing header", 1);
  ++row;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw CsvParseError("unexpected header '" + line + "'", row);

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, row);
    if (fields.size() != 9)
      throw CsvParseError("expected 9 fields, got " +
                              std::to_string(fields.size()),
                          row);
    RunRecord rec;
    rec.algorithm = fields[0];
    rec.problem = fields[1];
    rec.instance = fields[2];
    rec.scale = parse_u64_field(fields[3], "scale", row);
    rec.seed = parse_u64_field(fields[4], "seed", row);
    rec.budget_fes = parse_u64_field(fields[5], "budget_fes", row);
    rec.used_fes = parse_u64_field(fields[6], "used_fes", row);
    rec.best_f = parse_u64_field(fields[7], "best_f", row);
    if (fields[8] == "1")
      rec.success = true;
    else if (fields[8] == "0")
      rec.success = false;
    else
      throw CsvParseError("bad success flag '" + fields[8] + "'", row);
    if (rec.used_fes > rec.budget_fes)
      throw CsvParseError("used_fes exceeds budget_fes", row);
    if (rec.success != (rec.best_f == 0))
      throw CsvParseError("success flag contradicts best_f", row);
    records.push_back(std::move(rec));
  }
  return records;
}

std::uint64_t parse_scaled_uint(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t i = 0;
  std::string digits;   // significand without the dot
  int frac_digits = 0;  // digits after the dot
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    const char ch = text[i];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("bad number '" + text + "'");
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else {
      throw std::invalid_argument("bad number '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad number '" + text + "'");
  long exponent = 0;
  if (i < text.size()) {  // exponent part
    const std::string exp_text = text.substr(i + 1);
    try {
      std::size_t pos = 0;
      exponent = std::stol(exp_text, &pos);
      if (pos != exp_text.size() || exp_text.empty())
        throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in '" + text + "'");
    }
  }
  exponent -= frac_digits;
  // Strip leading zeros, shorten trailing zeros against a negative exponent.
  std::size_t start = 0;
  while (start + 1 < digits.size() && digits[start] == '0') ++start;
  digits = digits.substr(start);
  while (exponent < 0 && digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++exponent;
  }
  if (exponent < 0) {
    if (digits == "0")
      exponent = 0;
    else
      throw std::invalid_argument("'" + text + "' is not an integer");
  }
  std::uint64_t value = 0;
  const auto push_digit = [&](std::uint64_t d) {
    if (value > (std::numeric_limits<std::uint64_t>::max() - d) / 10)
      throw std::invalid_argument("'" + text + "' overflows 64 bits");
    value = value * 10 + d;
  };
  for (const char ch : digits) push_digit(static_cast<std::uint64_t>(ch - '0'));
  for (long k = 0; k < exponent; ++k) push_digit(0);
  return value;
}

}  // namespace ffbench
