#include "synchpack/algorithms.hpp"
#include "synchpack/io.hpp"
#include "synchpack/online.hpp"
#include "synchpack/workload.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace synchpack;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kPrecondition = 2, kInvalid = 3 };

void emit(const std::string& path, const std::string& text) {
  if (path == "-")
    std::cout << text << '\n';
  else
    write_text_file(path, text + "\n");
}

Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

bool wildcard_match(const std::string& pattern, const std::string& text) {
  std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

// Expands '*' and '?' in the file-name component of each argument.
std::vector<std::string> expand_paths(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& arg : args) {
    fs::path path(arg);
    std::string name = path.filename().string();
    if (name.find_first_of("*?") == std::string::npos) {
      out.push_back(arg);
      continue;
    }
    fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::vector<std::string> hits;
    if (fs::is_directory(dir))
      for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && wildcard_match(name, entry.path().filename().string()))
          hits.push_back(entry.path().string());
    std::sort(hits.begin(), hits.end());
    out.insert(out.end(), hits.begin(), hits.end());
  }
  return out;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

struct SynthFlags {
  int count = 0;
  SynthParams params;
  std::string weights = "equal";
};

void add_synth_flags(CLI::App* app, SynthParams& p, std::string& weights) {
  app->add_option("--jobs", p.n_jobs, "Jobs per instance");
  app->add_option("--min-tasks", p.min_tasks, "Minimum tasks per job");
  app->add_option("--max-tasks", p.max_tasks, "Maximum tasks per job");
  app->add_option("--machines", p.machines, "Machine count");
  app->add_option("--min-proc", p.min_proc, "Minimum processing time");
  app->add_option("--max-proc", p.max_proc, "Maximum processing time");
  app->add_option("--placement", p.placement_size, "Machines per task");
  app->add_flag("--distinct-machines", p.distinct_machines, "Put the tasks of a job on different machines");
  app->add_option("--arrival-span", p.arrival_span, "Arrivals drawn uniformly from [0, span]");
  app->add_option("--weights", weights, "equal, random or priority");
}

struct BenchRow {
  std::string instance, algo;
  int n_jobs = 0;
  int n_tasks = 0;
  std::optional<Rational> lp;
  Rational obj;
  std::optional<Rational> ratio;
  std::optional<Rational> lambda;
  double wall_ms = 0;
};

std::string opt_double(const std::optional<Rational>& q) { return q ? fixed(to_double(*q), 10) : ""; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scheduling of parallel-task jobs under packing and placement constraints"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one algorithm on an instance");
  std::string instance_path, out_path = "-", schedule_path, algo = "sp3";
  AlgoOptions algo_options;
  std::string epsilon_text = "1/2", alpha_text = "2";
  std::optional<std::uint64_t> seed;
  solve->add_option("instance", instance_path, "Instance JSON")->required();
  solve->add_option("--algo", algo, "Algorithm")->check(CLI::IsMember(algorithm_names()));
  solve->add_option("--epsilon", epsilon_text, "Interval growth for sp1");
  solve->add_option("--seed", seed, "Sample the stretch factor instead of derandomizing");
  solve->add_option("--alpha", alpha_text, "Remote penalty for tetris");
  solve->add_option("--out", out_path, "Stats JSON destination ('-' for stdout)");
  solve->add_option("--schedule", schedule_path, "Schedule JSON destination");
  bool no_compact = false;
  solve->add_flag("--no-compact", no_compact, "Skip left compaction in sp2");

  // validate
  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  std::string schedule_in;
  validate->add_option("instance", instance_path, "Instance JSON")->required();
  validate->add_option("schedule", schedule_in, "Schedule JSON")->required();

  // lb
  auto* lb = app.add_subcommand("lb", "Print the optimum of an LP relaxation");
  std::string relaxation = "lp3", lp_export;
  lb->add_option("instance", instance_path, "Instance JSON")->required();
  lb->add_option("--relaxation", relaxation, "lp1, lp2 or lp3")->check(CLI::IsMember({"lp1", "lp2", "lp3"}));
  lb->add_option("--epsilon", epsilon_text, "Interval growth for lp1");
  lb->add_option("--export-lp", lp_export, "Also write the model in LP text format");

  // bench
  auto* bench = app.add_subcommand("bench", "Run algorithms over a set of instances and write CSV");
  std::string suite = "offline", algos_text = "sp3", csv_path = "-";
  std::vector<std::string> instance_args;
  SynthFlags synth;
  std::string tau0_text = "300", gamma_text = "0", beta_text = "0";
  bool non_preemptive = false;
  std::uint64_t bench_seed = 0;
  bench->add_option("--suite", suite, "offline or online")->check(CLI::IsMember({"offline", "online"}));
  bench->add_option("--algos", algos_text, "Comma-separated algorithm names");
  bench->add_option("--instances", instance_args, "Instance files; '*' and '?' are expanded");
  bench->add_option("--synth", synth.count, "Number of seeded synthetic instances");
  bench->add_option("--seed", bench_seed, "Base seed for synthetic instances");
  bench->add_option("--epsilon", epsilon_text, "Interval growth for sp1");
  bench->add_option("--alpha", alpha_text, "Remote penalty for tetris");
  bench->add_option("--tau0", tau0_text, "Online base batch length");
  bench->add_option("--gamma", gamma_text, "Online batch growth factor");
  bench->add_option("--beta", beta_text, "Online batch growth rate");
  bench->add_flag("--non-preemptive", non_preemptive, "Online mode keeps started tasks running");
  bench->add_option("--out", csv_path, "CSV destination ('-' for stdout)");
  add_synth_flags(bench, synth.params, synth.weights);

  // gen
  auto* gen = app.add_subcommand("gen", "Write a synthetic or trace-derived instance");
  SynthParams gen_params;
  std::string gen_weights = "equal", trace_path, gen_out = "-";
  std::vector<std::string> capacity_texts;
  std::size_t max_trace_tasks = 0;
  int k_local = 0, n_remote = 0;
  gen->add_option("--seed", gen_params.seed, "Random seed");
  gen->add_option("--trace", trace_path, "Load this CSV trace instead of generating");
  gen->add_option("--capacities", capacity_texts, "Machine capacities for a trace")->delimiter(',');
  gen->add_option("--max-trace-tasks", max_trace_tasks, "Drop trace jobs with more tasks");
  gen->add_option("--local", k_local, "Re-draw placements: local machines per task");
  gen->add_option("--remote", n_remote, "Re-draw placements: remote machines per task");
  gen->add_option("--alpha", alpha_text, "Remote processing-time factor");
  gen->add_option("--out", gen_out, "Instance JSON destination");
  add_synth_flags(gen, gen_params, gen_weights);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      Instance instance = load_instance(instance_path);
      algo_options.epsilon = parse_rational(epsilon_text);
      algo_options.remote_penalty = parse_rational(alpha_text);
      algo_options.seed = seed;
      algo_options.compact = !no_compact;
      AlgoResult result = run_algorithm(algo, instance, algo_options);
      ValidationReport report = validate_schedule(instance, result.schedule);
      if (!report.ok()) {
        std::cerr << "internal error: produced schedule is invalid\n" << report_to_json(report).dump(2) << '\n';
        return kInternal;
      }
      if (!schedule_path.empty()) emit(schedule_path, schedule_to_json(result.schedule).dump(2));
      emit(out_path, stats_to_json(result.stats).dump(2));
      return kOk;
    }
    if (*validate) {
      Instance instance = load_instance(instance_path);
      Schedule schedule = schedule_from_json(read_json_file(schedule_in));
      ValidationReport report = validate_schedule(instance, schedule);
      Json doc = report_to_json(report);
      if (report.ok()) doc["objective"] = rational_to_json(schedule_objective(instance, schedule));
      std::cout << doc.dump(2) << '\n';
      return report.ok() ? kOk : kInvalid;
    }
    if (*lb) {
      Instance instance = load_instance(instance_path);
      const Relaxation r = parse_relaxation(relaxation);
      const Rational eps = parse_rational(epsilon_text);
      if (!lp_export.empty()) {
        lp::LpModel model;
        if (instance.job_count() > 0) {
          const auto T = horizon_upper_bound(instance);
          if (r == Relaxation::Lp1) model = build_lp1(instance, build_intervals(T, eps));
          if (r == Relaxation::Lp2) model = build_lp2(instance, build_intervals(T, Rational(1)));
          if (r == Relaxation::Lp3) model = build_lp3(instance);
        }
        write_text_file(lp_export, model.to_lp_format());
      }
      Rational value = lower_bound(instance, r, eps);
      std::cout << to_string(value) << '\n';
      return kOk;
    }
    if (*bench) {
      std::vector<std::string> algos;
      std::stringstream ss(algos_text);
      for (std::string a; std::getline(ss, a, ',');)
        if (!a.empty()) {
          if (!is_known_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
          algos.push_back(a);
        }
      std::vector<std::pair<std::string, Instance>> instances;
      for (const std::string& path : expand_paths(instance_args))
        instances.emplace_back(fs::path(path).filename().string(), load_instance(path));
      synth.params.weights = parse_weight_mode(synth.weights);
      for (int s = 0; s < synth.count; ++s) {
        SynthParams p = synth.params;
        p.seed = bench_seed + static_cast<std::uint64_t>(s);
        instances.emplace_back("synth-" + std::to_string(p.seed), synth_instance(p));
      }
      algo_options.epsilon = parse_rational(epsilon_text);
      algo_options.remote_penalty = parse_rational(alpha_text);

      std::vector<BenchRow> rows;
      for (const auto& [name, instance] : instances) {
        std::map<Relaxation, Rational> bounds;
        for (const std::string& a : algos) {
          BenchRow row{name, a, instance.job_count(), instance.task_count(), {}, Rational(0), {}, {}, 0.0};
          auto t0 = std::chrono::steady_clock::now();
          if (suite == "online") {
            OnlineConfig config;
            config.tau0 = parse_rational(tau0_text);
            config.gamma = parse_rational(gamma_text);
            config.beta = parse_rational(beta_text);
            config.algorithm = a;
            config.preemptive = !non_preemptive;
            config.options = algo_options;
            OnlineResult result = run_online(instance, config);
            if (!validate_schedule(instance, result.schedule).ok())
              throw std::logic_error("online schedule for " + name + "/" + a + " is invalid");
            row.obj = result.weighted_average_delay;
          } else {
            AlgoResult result = run_algorithm(a, instance, algo_options);
            if (!validate_schedule(instance, result.schedule).ok())
              throw std::logic_error("schedule for " + name + "/" + a + " is invalid");
            row.obj = result.stats.objective;
            row.lambda = result.stats.lambda;
            row.lp = result.stats.lp_objective;
            if (!row.lp) {
              Relaxation r = matching_relaxation(a, instance);
              if (!bounds.count(r)) bounds[r] = lower_bound(instance, r, algo_options.epsilon);
              row.lp = bounds[r];
            }
            if (*row.lp > 0) row.ratio = row.obj / *row.lp;
          }
          row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          rows.push_back(row);
        }
      }

      std::ostringstream csv;
      csv << "instance,algo,n_jobs,n_tasks,lp_obj,obj,ratio,lambda,wall_ms\n";
      for (const BenchRow& r : rows)
        csv << r.instance << ',' << r.algo << ',' << r.n_jobs << ',' << r.n_tasks << ',' << opt_double(r.lp) << ','
            << fixed(to_double(r.obj), 10) << ',' << opt_double(r.ratio) << ',' << opt_double(r.lambda) << ','
            << fixed(r.wall_ms, 4) << '\n';
      std::string text = csv.str();
      text.pop_back();
      emit(csv_path, text);

      std::ostream& summary = csv_path == "-" ? std::cerr : std::cout;
      summary << std::left << std::setw(12) << "algo" << std::setw(8) << "runs" << std::setw(16)
              << (suite == "online" ? "mean delay" : "mean obj") << std::setw(12) << "mean ratio" << "max ratio\n";
      for (const std::string& a : algos) {
        double obj = 0, ratio = 0, worst = 0;
        int n = 0, nr = 0;
        for (const BenchRow& r : rows) {
          if (r.algo != a) continue;
          ++n;
          obj += to_double(r.obj);
          if (r.ratio) {
            ++nr;
            ratio += to_double(*r.ratio);
            worst = std::max(worst, to_double(*r.ratio));
          }
        }
        summary << std::setw(12) << a << std::setw(8) << n << std::setw(16) << (n ? fixed(obj / n) : "-")
                << std::setw(12) << (nr ? fixed(ratio / nr) : "-") << (nr ? fixed(worst) : "-") << '\n';
      }
      return kOk;
    }
    if (*gen) {
      Instance instance = [&] {
        if (!trace_path.empty()) {
          TraceOptions t;
          for (const auto& c : capacity_texts) t.machines.push_back(parse_rational(c));
          if (t.machines.empty()) t.machines.assign(gen_params.machines, Rational(1));
          t.max_tasks = max_trace_tasks;
          t.weights = parse_weight_mode(gen_weights);
          t.seed = gen_params.seed;
          return load_trace(trace_path, t);
        }
        gen_params.weights = parse_weight_mode(gen_weights);
        return synth_instance(gen_params);
      }();
      if (k_local > 0) instance = augment_placement(instance, k_local, parse_rational(alpha_text), n_remote, gen_params.seed);
      emit(gen_out, instance_to_json(instance).dump(2));
      return kOk;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InstanceError& e) {
    std::cerr << "invalid instance: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
