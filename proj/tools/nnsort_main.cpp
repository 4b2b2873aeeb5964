// nnsort command line: dataset generation, model training, instrumented
// sorting, benchmark matrices and the operation-count model.

#include <iostream>

#include <CLI11.hpp>

#include "nnsort/bench/commands.hpp"

namespace {

using namespace nnsort;
using namespace nnsort::bench;

void add_predictor_flags(CLI::App* cmd, PredictorSpec& spec) {
  cmd->add_option("--predictor", spec.kind, "Position model: mlp, oracle, constant, random")
      ->check(CLI::IsMember({"mlp", "oracle", "constant", "random"}));
  cmd->add_option("--model", spec.model_path, "Trained model file (mlp predictor)");
  cmd->add_option("--constant", spec.constant, "Output of the constant predictor");
  cmd->add_option("--seed", spec.seed, "Seed of the random predictor");
}

void add_train_flags(CLI::App* cmd, TrainConfig& cfg) {
  cmd->add_option("--delta", cfg.delta, "Huber threshold");
  cmd->add_option("--epochs", cfg.epochs, "Training epochs");
  cmd->add_option("--batch", cfg.batch_size, "Mini-batch size");
  cmd->add_option("--rho", cfg.rho, "Adadelta decay");
  cmd->add_option("--eps-opt", cfg.eps_opt, "Adadelta stabilizer");
}

void add_sort_flags(CLI::App* cmd, SortConfig& cfg) {
  cmd->add_option("--m", cfg.m, "Relaxation factor");
  cmd->add_option("--tau", cfg.tau, "Conflict-array size threshold");
  cmd->add_option("--epsilon", cfg.epsilon, "Maximum mapping iterations");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned sorting with a small regression network"};
  app.require_subcommand(1);
  int code = kOk;

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic dataset");
  gen_cmd->add_option("--dist", gen.dist, "uniform, normal, lognormal or noisy")
      ->check(CLI::IsMember({"uniform", "normal", "lognormal", "noisy"}));
  gen_cmd->add_option("--n", gen.n, "Number of keys");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--noise", gen.noise, "Normal-key fraction for noisy data");
  gen_cmd->add_option("--lo", gen.params.lo, "Uniform lower bound");
  gen_cmd->add_option("--hi", gen.params.hi, "Uniform upper bound");
  gen_cmd->add_option("--mu", gen.params.mu, "Normal/log-normal location");
  gen_cmd->add_option("--sigma", gen.params.sigma, "Normal/log-normal scale");
  gen_cmd->add_option("--out", gen.out, "Output file (.bin or .csv)")->required();
  gen_cmd->callback([&] { code = cmd_gen(gen, std::cerr); });

  TrainOptions train_opt;
  auto* train_cmd = app.add_subcommand("train", "Train a position model on a dataset");
  train_cmd->add_option("dataset", train_opt.dataset, "Training keys (.bin or .csv)")->required();
  train_cmd->add_option("--model", train_opt.model_out, "Model output file")->required();
  train_cmd->add_option("--out", train_opt.loss_out, "Loss history CSV (default <model>.loss.csv)");
  train_cmd->add_option("--seed", train_opt.config.rng_seed, "Initialization and shuffling seed");
  add_train_flags(train_cmd, train_opt.config);
  train_cmd->callback([&] { code = cmd_train(train_opt, std::cerr); });

  SortOptions sort_opt;
  auto* sort_cmd = app.add_subcommand("sort", "Sort a dataset and report metrics");
  sort_cmd->add_option("dataset", sort_opt.dataset, "Keys to sort (.bin or .csv)")->required();
  add_predictor_flags(sort_cmd, sort_opt.predictor);
  add_sort_flags(sort_cmd, sort_opt.config);
  sort_cmd->add_option("--out", sort_opt.out, "Sorted output file (.bin or .csv)");
  sort_cmd->add_option("--metrics", sort_opt.metrics_out, "Metrics JSON (default: stdout)");
  sort_cmd->add_flag("--self-check,!--no-self-check", sort_opt.self_check, "Verify the output before exiting");
  sort_cmd->callback([&] { code = cmd_sort(sort_opt, std::cout); });

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run the algorithm x distribution x size matrix");
  bench_cmd->add_option("--dist", bench.distributions, "Distributions (uniform normal lognormal noisy)");
  bench_cmd->add_option("--n", bench.sizes, "Dataset sizes");
  bench_cmd->add_option("--algorithms", bench.algorithms,
                        "nn_sort single_pass quicksort heapsort mergesort");
  bench_cmd->add_option("--trials", bench.trials, "Trials per cell");
  bench_cmd->add_option("--seed", bench.seed, "Base seed");
  bench_cmd->add_option("--noise", bench.noise, "Normal-key fraction for the noisy distribution");
  bench_cmd->add_option("--train-n", bench.train_n, "Training-set size (default: largest --n, max 1e5)");
  bench_cmd->add_option("--model", bench.model_path, "Use this model instead of training per distribution");
  bench_cmd->add_option("--data", bench.data_path, "Benchmark a dataset file instead of synthetic data");
  bench_cmd->add_option("--column", bench.column, "CSV column name or index for --data");
  bench_cmd->add_option("--out", bench.out, "Results CSV");
  bench_cmd->add_flag("--parallel", bench.parallel, "Run trials concurrently");
  add_sort_flags(bench_cmd, bench.config);
  add_train_flags(bench_cmd, bench.train);
  bench_cmd->callback([&] { code = cmd_bench(bench, std::cerr); });

  IterationsOptions iter;
  auto* iter_cmd = app.add_subcommand("iterations", "Sweep the iteration cap");
  iter_cmd->add_option("dataset", iter.dataset, "Keys to sort")->required();
  add_predictor_flags(iter_cmd, iter.predictor);
  iter_cmd->add_option("--eps-min", iter.eps_min, "First iteration cap");
  iter_cmd->add_option("--eps-max", iter.eps_max, "Last iteration cap");
  iter_cmd->add_option("--m", iter.m, "Relaxation factor");
  iter_cmd->add_option("--tau", iter.tau, "Conflict-array size threshold");
  iter_cmd->add_option("--out", iter.out, "CSV output (default: stdout)");
  iter_cmd->callback([&] { code = cmd_iterations(iter, std::cout); });

  CostModelOptions cost;
  auto* cost_cmd = app.add_subcommand("costmodel", "Evaluate the operation-count model");
  cost_cmd->add_option("--metrics", cost.metrics, "Metrics JSON from `sort` to reconcile");
  cost_cmd->add_option("--n", cost.params.n, "Number of keys");
  cost_cmd->add_option("--theta", cost.params.theta, "Operations per model invocation");
  cost_cmd->add_option("--sigma", cost.params.sigma, "Per-iteration collision rate");
  cost_cmd->add_option("--e", cost.params.e, "Per-iteration mis-order rate");
  cost_cmd->add_option("--t", cost.params.t, "Completed iterations");
  cost_cmd->add_option("--epsilon", cost.params.epsilon, "Iteration cap");
  cost_cmd->add_option("--out", cost.out, "Also write the report here");
  cost_cmd->callback([&] { code = cmd_costmodel(cost, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  return code;
}
