#include "synchpack/workload.hpp"

#include "synchpack/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace synchpack {

TraceParseError::TraceParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

WeightMode parse_weight_mode(const std::string& text) {
  if (text == "equal") return WeightMode::Equal;
  if (text == "random") return WeightMode::Random;
  if (text == "priority") return WeightMode::Priority;
  throw std::invalid_argument("unknown weight mode: " + text);
}

std::string to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::Equal: return "equal";
    case WeightMode::Random: return "random";
    case WeightMode::Priority: return "priority";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Rational random_weight(std::mt19937_64& rng) { return Rational(std::uniform_int_distribution<int>(1, 10)(rng)); }

}  // namespace

Instance parse_trace(const std::string& csv_text, const TraceOptions& options) {
  if (options.machines.empty()) throw std::invalid_argument("trace loading needs at least one machine");
  static const std::vector<std::string> required{"job_id", "task_id", "arrival_time", "size", "duration", "priority"};

  struct RawTask {
    Rational size;
    std::int64_t duration;
    std::optional<int> machine;
    std::size_t line;
  };
  struct RawJob {
    Rational arrival;
    Rational priority;
    std::vector<RawTask> tasks;
    std::set<std::string> task_ids;
  };
  std::vector<std::string> order;
  std::map<std::string, RawJob> jobs;
  std::map<std::string, int> column;

  std::istringstream in(csv_text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> cells = split_csv(t);
    if (column.empty()) {
      for (std::size_t c = 0; c < cells.size(); ++c) column[cells[c]] = static_cast<int>(c);
      for (const auto& name : required)
        if (!column.count(name)) throw TraceParseError(lineno, "missing column " + name);
      continue;
    }
    auto cell = [&](const std::string& name) -> std::string {
      auto it = column.find(name);
      if (it == column.end() || it->second >= static_cast<int>(cells.size())) return "";
      return cells[it->second];
    };
    try {
      for (const auto& name : required)
        if (cell(name).empty()) throw std::invalid_argument("empty " + name);
      RawTask task;
      task.size = parse_rational(cell("size"));
      if (task.size <= 0) throw std::invalid_argument("size must be positive");
      Rational duration = parse_rational(cell("duration"));
      if (duration <= 0) throw std::invalid_argument("duration must be positive");
      task.duration = ceil_to_int(duration);
      Rational arrival = parse_rational(cell("arrival_time"));
      if (arrival < 0) throw std::invalid_argument("arrival must be nonnegative");
      Rational priority = parse_rational(cell("priority"));
      std::string m = cell("machine");
      if (!m.empty()) {
        Rational mi = parse_rational(m);
        if (mi.get_den() != 1 || mi < 0 || mi >= static_cast<long>(options.machines.size()))
          throw std::invalid_argument("machine index out of range");
        task.machine = static_cast<int>(mi.get_num().get_si());
      }
      task.line = lineno;
      std::string id = cell("job_id");
      auto [it, fresh] = jobs.try_emplace(id);
      RawJob& job = it->second;
      if (fresh) {
        order.push_back(id);
        job.arrival = arrival;
        job.priority = priority;
      } else {
        job.arrival = min_rational(job.arrival, arrival);
        job.priority = max_rational(job.priority, priority);
      }
      if (!job.task_ids.insert(cell("task_id")).second) throw std::invalid_argument("duplicate task_id in job");
      job.tasks.push_back(task);
    } catch (const TraceParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceParseError(lineno, e.what());
    }
  }

  std::set<Rational> priorities;
  for (const auto& [id, job] : jobs) priorities.insert(job.priority);
  std::mt19937_64 rng(options.seed);
  std::vector<Job> out;
  for (const std::string& id : order) {
    const RawJob& raw = jobs.at(id);
    if (options.max_tasks > 0 && raw.tasks.size() > options.max_tasks) continue;
    Job job;
    job.arrival = raw.arrival;
    switch (options.weights) {
      case WeightMode::Equal: job.weight = 1; break;
      case WeightMode::Random: job.weight = random_weight(rng); break;
      case WeightMode::Priority: {
        auto rank = std::distance(priorities.begin(), priorities.find(raw.priority)) + 1;
        job.weight = std::min<long>(rank, kPriorityLevels);
        break;
      }
    }
    for (const RawTask& rt : raw.tasks) {
      Task task;
      task.size = rt.size;
      if (rt.machine) {
        task.proc[*rt.machine] = rt.duration;
      } else {
        for (std::size_t i = 0; i < options.machines.size(); ++i)
          if (rt.size <= options.machines[i]) task.proc[static_cast<int>(i)] = rt.duration;
        if (task.proc.empty()) throw TraceParseError(rt.line, "task fits on no machine");
      }
      job.tasks.push_back(std::move(task));
    }
    out.push_back(std::move(job));
  }
  return Instance(options.machines, std::move(out));
}

Instance load_trace(const std::string& path, const TraceOptions& options) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_trace(ss.str(), options);
}

Instance augment_placement(const Instance& instance, int k_local, const Rational& alpha, int n_remote,
                           std::uint64_t seed) {
  const int M = instance.machine_count();
  if (k_local < 1 || n_remote < 0) throw std::invalid_argument("need k_local >= 1 and n_remote >= 0");
  if (k_local + n_remote > M) throw std::invalid_argument("k_local + n_remote exceeds the machine count");
  if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<Job> jobs = instance.jobs();
  for (Job& job : jobs) {
    for (Task& task : job.tasks) {
      std::int64_t base = task.proc.begin()->second;
      for (const auto& [i, p] : task.proc) base = std::min(base, p);
      std::vector<int> eligible;
      for (int i = 0; i < M; ++i)
        if (task.size <= instance.capacity(i)) eligible.push_back(i);
      if (static_cast<int>(eligible.size()) < k_local + n_remote)
        throw std::invalid_argument("not enough machines fit the task for the requested placement");
      std::shuffle(eligible.begin(), eligible.end(), rng);
      task.proc.clear();
      for (int c = 0; c < k_local; ++c) task.proc[eligible[c]] = base;
      const std::int64_t remote = ceil_to_int(alpha * base);
      for (int c = k_local; c < k_local + n_remote; ++c) task.proc[eligible[c]] = remote;
    }
  }
  return Instance(instance.machines(), std::move(jobs));
}

Instance synth_instance(const SynthParams& P) {
  if (P.n_jobs < 0 || P.machines < 1 || P.min_tasks < 1 || P.max_tasks < P.min_tasks || P.size_steps < 1 ||
      P.min_size_step < 1 || P.max_size_step < P.min_size_step || P.max_size_step > P.size_steps ||
      P.min_proc < 1 || P.max_proc < P.min_proc || P.placement_size < 1 || P.arrival_span < 0 || P.capacity <= 0)
    throw std::invalid_argument("invalid synthetic instance parameters");
  if (P.distinct_machines && (P.placement_size != 1 || P.max_tasks > P.machines))
    throw std::invalid_argument("distinct machines need single placements and max_tasks <= machines");
  std::mt19937_64 rng(P.seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const int k = std::min(P.placement_size, P.machines);
  std::vector<int> all(P.machines);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Job> jobs;
  for (int j = 0; j < P.n_jobs; ++j) {
    Job job;
    switch (P.weights) {
      case WeightMode::Equal: job.weight = 1; break;
      case WeightMode::Random: job.weight = random_weight(rng); break;
      case WeightMode::Priority: job.weight = Rational(uniform(1, kPriorityLevels)); break;
    }
    job.arrival = Rational(P.arrival_span > 0 ? uniform(0, P.arrival_span) : 0);
    const auto n_tasks = uniform(P.min_tasks, P.max_tasks);
    if (P.distinct_machines) std::shuffle(all.begin(), all.end(), rng);
    for (std::int64_t t = 0; t < n_tasks; ++t) {
      Task task;
      task.size = P.capacity * make_rational(uniform(P.min_size_step, P.max_size_step), P.size_steps);
      std::int64_t p = uniform(P.min_proc, P.max_proc);
      if (P.distinct_machines) {
        task.proc[all[t]] = p;
      } else {
        std::shuffle(all.begin(), all.end(), rng);
        for (int c = 0; c < k; ++c) task.proc[all[c]] = P.uniform_proc ? p : uniform(P.min_proc, P.max_proc);
      }
      job.tasks.push_back(std::move(task));
    }
    jobs.push_back(std::move(job));
  }
  return Instance(std::vector<Rational>(P.machines, P.capacity), std::move(jobs));
}

}  // namespace synchpack
