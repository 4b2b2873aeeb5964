#include "nnsort/bench/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nnsort/baselines.hpp"
#include "nnsort/bench/reports.hpp"
#include "nnsort/dataset_io.hpp"
#include "nnsort/nn_sort.hpp"
#include "nnsort/rng.hpp"

namespace nnsort::bench {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

template <class F>
int guarded(std::ostream& log, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InvalidKeyError& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const json::exception& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvariantViolation& e) {
    log << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << '\n';
    return kInvariantViolation;
  }
}

std::vector<Key> load_keys(const fs::path& path) {
  if (!fs::exists(path)) throw DataError("dataset " + path.string() + " does not exist");
  auto keys = io::read_dataset(path);
  check_keys(keys);
  return keys;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  if (!out) throw DataError("write error on " + path.string());
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return io::format_double(v); }

std::vector<Key> make_distribution(const std::string& dist, std::size_t n, std::uint64_t seed, double noise) {
  if (dist == "noisy") return datagen::noisy_mix(n, noise, seed);
  const auto d = datagen::parse_distribution(dist);
  if (!d) throw ConfigError("unknown distribution '" + dist + "' (uniform, normal, lognormal, noisy)");
  return datagen::generate(*d, n, seed);
}

struct CellResult {
  double seconds = 0.0;
  std::optional<double> conflict_rate;
  std::uint64_t ops = 0;
  bool ok = false;
  std::string status;
};

CellResult run_algorithm(const std::string& algorithm, std::span<const Key> data,
                         const std::optional<Predictor>& predictor, const SortConfig& cfg) {
  CellResult cell;
  std::vector<Key> output;
  const auto t0 = Clock::now();
  if (algorithm == "nn_sort" || algorithm == "single_pass") {
    if (!predictor) {
      cell.status = "no_model";
      return cell;
    }
    if (algorithm == "nn_sort") {
      auto r = nn_sort(data, *predictor, cfg);
      cell.seconds = seconds_since(t0);
      cell.ops = r.runs.counters.operations();
      cell.conflict_rate = data.empty() ? 0.0
                                        : static_cast<double>(r.runs.final_conflicts.size()) /
                                              static_cast<double>(data.size());
      output = std::move(r.output);
    } else {
      auto r = single_pass_learned_sort(data, *predictor, cfg.m);
      cell.seconds = seconds_since(t0);
      cell.ops = r.counters.operations();
      cell.conflict_rate = r.conflict_rate;
      output = std::move(r.output);
    }
  } else {
    OpCounters c;
    if (algorithm == "quicksort") {
      output = quicksort(data, c);
    } else if (algorithm == "heapsort") {
      output = heapsort(data, c);
    } else if (algorithm == "mergesort") {
      output = mergesort(data, c);
    } else {
      throw ConfigError("unknown algorithm '" + algorithm + "'");
    }
    cell.seconds = seconds_since(t0);
    cell.ops = c.operations();
  }
  const auto check = verify_sorted_permutation(data, output);
  cell.ok = check.passed;
  cell.status = check.passed ? "ok" : "failed: " + check.detail;
  return cell;
}

}  // namespace

Predictor make_predictor(const PredictorSpec& spec, std::span<const Key> keys) {
  if (spec.kind == "mlp") {
    if (!spec.model_path) throw ConfigError("--model is required for the mlp predictor");
    return Predictor::mlp(load_model(*spec.model_path));
  }
  if (spec.kind == "oracle") return Predictor::oracle(keys);
  if (spec.kind == "constant") return Predictor::constant(spec.constant);
  if (spec.kind == "random") return Predictor::seeded_random(spec.seed);
  throw ConfigError("unknown predictor '" + spec.kind + "' (mlp, oracle, constant, random)");
}

int cmd_train(const TrainOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    const auto keys = load_keys(opt.dataset);
    const auto result = train(keys, opt.config);
    save_model(result.model, opt.model_out);

    std::ostringstream csv;
    csv << "epoch,mean_huber_loss,elapsed_seconds\n";
    for (std::size_t i = 0; i < result.epoch_loss.size(); ++i) {
      csv << i + 1 << ',' << fmt(result.epoch_loss[i]) << ',' << fmt(result.epoch_seconds[i]) << '\n';
    }
    const fs::path loss_path = opt.loss_out.value_or(fs::path(opt.model_out.string() + ".loss.csv"));
    write_text(loss_path, csv.str());

    log << "trained on " << keys.size() << " keys: loss " << result.epoch_loss.front() << " -> "
        << result.epoch_loss.back() << " in " << result.epoch_seconds.back() << " s\n";
    return kOk;
  });
}

int cmd_sort(const SortOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    opt.config.validate();
    const auto keys = load_keys(opt.dataset);
    const Predictor predictor = make_predictor(opt.predictor, keys);
    auto result = nn_sort(keys, predictor, opt.config);

    json metrics = metrics_json(result.runs, opt.config, opt.predictor.kind);
    if (opt.self_check) {
      const auto check = verify_sorted_permutation(keys, result.output);
      metrics["self_check"] = {{"passed", check.passed}, {"method", check.method}};
      if (!check.passed) throw InvariantViolation("self-check failed: " + check.detail);
    }
    if (opt.out) io::write_dataset(*opt.out, result.output);
    const std::string text = metrics.dump(2) + "\n";
    if (opt.metrics_out) {
      write_text(*opt.metrics_out, text);
      log << "sorted " << keys.size() << " keys in " << result.runs.iterations() << " iteration(s), "
          << result.runs.final_conflicts.size() << " keys in the final conflict array\n";
    } else {
      log << text;
    }
    return kOk;
  });
}

int cmd_iterations(const IterationsOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    if (opt.eps_min < 1 || opt.eps_max < opt.eps_min) throw ConfigError("need 1 <= eps-min <= eps-max");
    const auto keys = load_keys(opt.dataset);
    const Predictor predictor = make_predictor(opt.predictor, keys);

    std::ostringstream csv;
    csv << "epsilon,last_conflict_size,iterations,total_time\n";
    for (std::size_t eps = opt.eps_min; eps <= opt.eps_max; ++eps) {
      const SortConfig cfg{opt.m, opt.tau, eps};
      const auto t0 = Clock::now();
      const auto result = nn_sort(keys, predictor, cfg);
      const double seconds = seconds_since(t0);
      if (!std::is_sorted(result.output.begin(), result.output.end()) || result.output.size() != keys.size()) {
        throw InvariantViolation("unsorted output at epsilon " + std::to_string(eps));
      }
      csv << eps << ',' << result.runs.final_conflicts.size() << ',' << result.runs.iterations() << ','
          << fmt(seconds) << '\n';
    }
    if (opt.out) {
      write_text(*opt.out, csv.str());
    } else {
      log << csv.str();
    }
    return kOk;
  });
}

int cmd_costmodel(const CostModelOptions& opt, std::ostream& out, std::ostream& log) {
  return guarded(log, [&] {
    json report;
    if (opt.metrics) {
      std::ifstream in(*opt.metrics);
      if (!in) throw DataError("cannot open metrics file " + opt.metrics->string());
      json metrics;
      try {
        metrics = json::parse(in);
      } catch (const json::parse_error& e) {
        throw DataError("malformed metrics JSON: " + std::string(e.what()));
      }
      const RunSet rs = runset_from_metrics(metrics);
      const int epsilon = metrics.at("config").at("epsilon").get<int>();
      const double theta = metrics.value("theta", static_cast<double>(kModelTheta));
      const auto rec = analysis::reconcile(rs, epsilon, theta);
      report["reconcile"] = reconciliation_json(rec);
      if (rec.params.t >= 1 && rec.params.sigma < 1.0) report["costmodel"] = costmodel_json(rec.params);
    } else {
      report["costmodel"] = costmodel_json(opt.params);
    }
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (opt.out) write_text(*opt.out, text);
    return kOk;
  });
}

int cmd_gen(const GenOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    std::vector<Key> keys;
    if (opt.dist == "noisy") {
      keys = datagen::noisy_mix(opt.n, opt.noise, opt.seed);
    } else {
      const auto d = datagen::parse_distribution(opt.dist);
      if (!d) throw ConfigError("unknown distribution '" + opt.dist + "'");
      keys = datagen::generate(*d, opt.n, opt.seed, opt.params);
    }
    io::write_dataset(opt.out, keys);
    log << "wrote " << keys.size() << " " << opt.dist << " keys to " << opt.out.string() << '\n';
    return kOk;
  });
}

int cmd_bench(const BenchOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    opt.config.validate();
    if (opt.trials < 1) throw ConfigError("--trials must be >= 1");

    struct Workload {
      std::string name;
      std::string dist;  // empty for a dataset file
      std::size_t n = 0;
    };
    std::vector<Workload> workloads;
    std::vector<Key> file_keys;
    if (opt.data_path) {
      if (opt.data_path->extension() == ".csv") {
        io::ColumnRef col;
        if (!opt.column.empty() && std::all_of(opt.column.begin(), opt.column.end(),
                                                    [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
          col = static_cast<std::size_t>(std::stoul(opt.column));
        } else {
          col = opt.column;
        }
        file_keys = datagen::load_csv_keys(*opt.data_path, col).keys;
      } else {
        file_keys = io::read_dataset(*opt.data_path);
      }
      check_keys(file_keys);
      workloads.push_back({opt.data_path->stem().string(), "", file_keys.size()});
    } else {
      for (const auto& dist : opt.distributions) {
        for (std::size_t n : opt.sizes) {
          const std::string name = dist == "noisy" ? "noisy(" + fmt(opt.noise) + ")" : dist;
          workloads.push_back({name, dist, n});
        }
      }
    }

    const bool needs_model = std::any_of(opt.algorithms.begin(), opt.algorithms.end(),
                                         [](const std::string& a) { return a == "nn_sort" || a == "single_pass"; });
    std::optional<MlpModel> shared_model;
    if (opt.model_path) shared_model = load_model(*opt.model_path);

    std::map<std::string, Predictor> trained;  // per distribution
    auto predictor_for = [&](const Workload& w) -> std::optional<Predictor> {
      if (!needs_model) return std::nullopt;
      if (shared_model) return Predictor::mlp(*shared_model);
      if (auto it = trained.find(w.name); it != trained.end()) return it->second;
      std::vector<Key> train_keys;
      if (w.dist.empty()) {
        train_keys = file_keys;
      } else {
        std::size_t train_n = opt.train_n;
        if (train_n == 0) {
          train_n = std::min<std::size_t>(100000, *std::max_element(opt.sizes.begin(), opt.sizes.end()));
        }
        train_keys = make_distribution(w.dist, std::max<std::size_t>(train_n, 2), mix64(opt.seed ^ 0x7261696eULL),
                                       opt.noise);
      }
      TrainConfig tc = opt.train;
      tc.batch_size = std::min(tc.batch_size, train_keys.size());
      log << "training model for " << w.name << " on " << train_keys.size() << " keys\n";
      auto p = Predictor::mlp(train(train_keys, tc).model);
      trained.emplace(w.name, p);
      return p;
    };

    std::ostringstream csv;
    csv << "algorithm,distribution,n,trial,conflict_rate,ops,status,sorting_time,sorting_rate\n";
    bool any_failed = false;
    for (const auto& w : workloads) {
      const auto predictor = predictor_for(w);
      auto trial_data = [&](std::size_t trial) {
        if (w.dist.empty()) return file_keys;
        return make_distribution(w.dist, w.n, mix64(opt.seed + 0x9E3779B97F4A7C15ULL * (trial + 1)), opt.noise);
      };
      for (const auto& algorithm : opt.algorithms) {
        std::vector<CellResult> cells(opt.trials);
        auto run_trial = [&](std::size_t trial) {
          const auto data = trial_data(trial);
          try {
            cells[trial] = run_algorithm(algorithm, data, predictor, opt.config);
          } catch (const ConfigError&) {
            throw;
          } catch (const std::exception& e) {
            cells[trial].status = std::string("failed: ") + e.what();
          }
        };
        if (opt.parallel) {
          std::vector<std::future<void>> jobs;
          for (std::size_t t = 0; t < opt.trials; ++t) jobs.push_back(std::async(std::launch::async, run_trial, t));
          for (auto& j : jobs) j.get();
        } else {
          for (std::size_t t = 0; t < opt.trials; ++t) run_trial(t);
        }

        std::vector<double> times, rates, conflicts, ops;
        for (std::size_t t = 0; t < opt.trials; ++t) {
          const auto& c = cells[t];
          const double rate = c.seconds > 0.0 ? static_cast<double>(w.n) / c.seconds : 0.0;
          csv << algorithm << ',' << w.name << ',' << w.n << ',' << t + 1 << ','
              << (c.conflict_rate ? fmt(*c.conflict_rate) : "") << ',' << c.ops << ',' << c.status << ','
              << fmt(c.seconds) << ',' << fmt(rate) << '\n';
          if (!c.ok) {
            any_failed = any_failed || c.status != "no_model";
            continue;
          }
          times.push_back(c.seconds);
          rates.push_back(rate);
          ops.push_back(static_cast<double>(c.ops));
          if (c.conflict_rate) conflicts.push_back(*c.conflict_rate);
        }
        const bool have = !times.empty();
        csv << algorithm << ',' << w.name << ',' << w.n << ",median,"
            << (conflicts.empty() ? "" : fmt(median(conflicts))) << ','
            << (have ? fmt(median(ops)) : "") << ',' << (have ? "ok" : "failed") << ','
            << (have ? fmt(median(times)) : "") << ',' << (have ? fmt(median(rates)) : "") << '\n';
      }
      // Kept so result tables line up with published ones that include it.
      csv << "redis_sort," << w.name << ',' << w.n << ",median,,,unavailable,,\n";
    }
    write_text(opt.out, csv.str());
    log << "wrote " << opt.out.string() << (any_failed ? " (some cells failed)" : "") << '\n';
    return kOk;
  });
}

}  // namespace nnsort::bench
