#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "desfa/competence.hpp"
#include "desfa/errors.hpp"
#include "desfa/registry.hpp"
#include "desfa/report_io.hpp"
#include "desfa/synthetic.hpp"
#include "desfa/version.hpp"

namespace fs = std::filesystem;

namespace {

struct RunArgs {
  std::string dataset;
  std::vector<std::string> methods;
  int k = 7;
  std::vector<int> enn_ks = {1, 3, 5};
  int ensemble_size = 10;
  int iterations = 20;
  std::uint64_t seed = 42;
  std::string out;
  bool trace = false;
  std::string data_dir = "data";
  int epochs = 100;
  double learning_rate = 1.0;
  double train_fraction = 0.5;
  double validation_fraction = 0.25;
  bool no_stratify = false;
  bool no_scale = false;
  int threads = 1;
  double alpha = 0.05;
  std::string from_manifest;
};

struct DemoArgs {
  std::string out = "demo-enn";
  std::size_t n_per_class = 200;
  std::vector<double> mu0 = {0.0, 0.0};
  std::vector<double> mu1 = {3.5, 0.0};
  double variance = 1.0;
  std::vector<int> enn_ks = {1, 3, 5};
  std::uint64_t seed = 42;
};

std::string default_out_dir(const std::string& dataset) {
  const bool looks_like_path =
      dataset.find('/') != std::string::npos || dataset.find('\\') != std::string::npos ||
      (dataset.size() > 4 && dataset.compare(dataset.size() - 4, 4, ".csv") == 0);
  const std::string leaf = looks_like_path ? fs::path(dataset).stem().string() : dataset;
  return (fs::path("runs") / leaf).string();
}

int do_run(const RunArgs& args) {
  desfa::ExperimentConfig cfg;
  if (!args.from_manifest.empty()) {
    cfg = desfa::config_from_manifest(args.from_manifest);
  } else {
    cfg.dataset = args.dataset;
    bool want_loo = args.methods.empty();
    for (const std::string& id : args.methods) {
      if (id == "loo") {
        want_loo = true;
        continue;
      }
      cfg.methods.push_back(desfa::parse_method(id));
    }
    if (!args.methods.empty() && cfg.methods.empty() && !want_loo)
      throw desfa::ValidationError("--methods named no method");
    if (!args.methods.empty() && cfg.methods.empty() && want_loo)
      throw desfa::ValidationError(
          "--methods loo needs at least one ensemble method next to it");
    cfg.include_loo = want_loo;
    cfg.k = args.k;
    cfg.enn_ks = args.enn_ks;
    cfg.ensemble_size = args.ensemble_size;
    cfg.iterations = args.iterations;
    cfg.seed = args.seed;
    cfg.epochs = args.epochs;
    cfg.learning_rate = args.learning_rate;
    cfg.train_fraction = args.train_fraction;
    cfg.validation_fraction = args.validation_fraction;
    cfg.stratified = !args.no_stratify;
    cfg.scale_features = !args.no_scale;
    cfg.threads = args.threads;
    cfg.alpha = args.alpha;
  }

  const std::string out_dir = args.out.empty() ? default_out_dir(cfg.dataset) : args.out;
  const desfa::LoadedDataset data = desfa::load_dataset(cfg.dataset, args.data_dir);

  std::ofstream trace_out;
  desfa::TraceSink sink;
  if (args.trace) {
    fs::create_directories(out_dir);
    const std::string trace_path = desfa::report_paths(out_dir).trace_jsonl;
    trace_out.open(trace_path, std::ios::binary);
    if (!trace_out) throw desfa::ParseError(trace_path + ": cannot open file for writing");
    sink = [&trace_out](const desfa::QueryTrace& t) { trace_out << desfa::trace_line(t) << '\n'; };
  }

  const desfa::ExperimentResult result = desfa::run_experiment(cfg, data, sink);
  desfa::write_report(result, out_dir);

  std::cout << desfa::render_result_table(result) << '\n';
  const desfa::ReportPaths paths = desfa::report_paths(out_dir);
  std::cout << "report:   " << paths.report_json << '\n'
            << "scores:   " << paths.scores_csv << '\n'
            << "table:    " << paths.table_txt << '\n'
            << "timing:   " << paths.timing_json << '\n'
            << "manifest: " << paths.manifest_json << '\n';
  if (args.trace) std::cout << "trace:    " << paths.trace_jsonl << '\n';
  return 0;
}

int do_demo_enn(const DemoArgs& args) {
  const desfa::Dataset ds = desfa::generate_two_gaussians(
      args.n_per_class, {args.mu0[0], args.mu0[1]}, {args.mu1[0], args.mu1[1]}, args.variance,
      args.seed);
  fs::create_directories(args.out);
  desfa::save_csv(ds, (fs::path(args.out) / "original.csv").string(), true);
  std::cout << "wrote " << (fs::path(args.out) / "original.csv").string() << " (" << ds.n()
            << " rows)\n";

  for (int k : args.enn_ks) {
    const auto keep = desfa::enn_filter(ds, k);
    std::vector<std::size_t> kept;
    std::vector<std::size_t> removed;
    for (std::size_t i = 0; i < keep.size(); ++i) (keep[i] ? kept : removed).push_back(i);

    const std::string kept_path =
        (fs::path(args.out) / ("kept_k" + std::to_string(k) + ".csv")).string();
    const std::string removed_path =
        (fs::path(args.out) / ("removed_k" + std::to_string(k) + ".csv")).string();
    desfa::save_csv(ds.subset(kept), kept_path, true);
    if (removed.empty()) {
      // Keep the file set uniform even when nothing was edited out.
      std::ofstream empty(removed_path, std::ios::binary);
      empty << "f0,f1,label\n";
    } else {
      desfa::save_csv(ds.subset(removed), removed_path, true);
    }
    std::cout << "k=" << k << ": kept " << kept.size() << "/" << ds.n() << " ("
              << static_cast<double>(kept.size()) * 100.0 / static_cast<double>(ds.n())
              << "%), wrote " << kept_path << " and " << removed_path << '\n';
  }
  return 0;
}

int do_table(const std::string& dir) {
  std::cout << desfa::render_comparison(dir);
  return 0;
}

int do_datasets(const std::string& data_dir) {
  std::ostringstream out;
  for (const desfa::DatasetInfo& info : desfa::dataset_registry()) {
    std::string status = "ready";
    if (info.synthetic) {
      status = "generated";
    } else {
      for (const std::string& f : info.files)
        if (!fs::exists(fs::path(data_dir) / f)) status = "missing";
    }
    out << info.name << std::string(info.name.size() < 18 ? 18 - info.name.size() : 1, ' ')
        << status << std::string(status.size() < 11 ? 11 - status.size() : 1, ' ')
        << info.summary << '\n';
  }
  std::cout << out.str();
  std::cout << "\ndata directory: " << data_dir
            << "  (see data/README.md for fetching the missing ones)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic selection over bagged perceptrons: benchmark runner"};
  app.set_version_flag("--version", std::string(desfa::kVersion));
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run the evaluation protocol on one dataset");
  run->add_option("-d,--dataset", run_args.dataset,
                  "Registry name or CSV path (see the datasets subcommand)");
  run->add_option("--methods", run_args.methods,
                  "Comma list of methods; 'loo' adds the nearest-neighbor reference "
                  "(default: all)")
      ->delimiter(',');
  run->add_option("-k,--k", run_args.k, "Neighborhood size");
  run->add_option("--enn-k", run_args.enn_ks, "Comma list of edit sizes for the default set")
      ->delimiter(',');
  run->add_option("-L,--ensemble-size", run_args.ensemble_size, "Number of bagged members");
  run->add_option("-i,--iterations", run_args.iterations, "Protocol repetitions");
  run->add_option("-s,--seed", run_args.seed, "Master seed");
  run->add_option("-o,--out", run_args.out, "Output directory (default runs/<dataset>)")
      ->envname("DESFA_OUT_DIR");
  run->add_flag("--trace", run_args.trace, "Write a per-query trace.jsonl");
  run->add_option("--data-dir", run_args.data_dir, "Where dataset files live")
      ->envname("DESFA_DATA_DIR");
  run->add_option("--epochs", run_args.epochs, "Perceptron training epochs");
  run->add_option("--learning-rate", run_args.learning_rate, "Perceptron learning rate");
  run->add_option("--train-fraction", run_args.train_fraction,
                  "Share of data in the training pool");
  run->add_option("--validation-fraction", run_args.validation_fraction,
                  "Share of the pool held out for selection");
  run->add_flag("--no-stratify", run_args.no_stratify, "Split without per-class balancing");
  run->add_flag("--no-scale", run_args.no_scale, "Skip min-max feature scaling");
  run->add_option("-t,--threads", run_args.threads, "Worker threads for query loops");
  run->add_option("--alpha", run_args.alpha, "Significance level for the paired t-test");
  run->add_option("--from-manifest", run_args.from_manifest,
                  "Re-run the config stored in a manifest.json (other config flags are "
                  "ignored; --out, --data-dir and --trace still apply)");

  DemoArgs demo_args;
  CLI::App* demo = app.add_subcommand(
      "demo-enn", "Edit a two-Gaussian sample and dump kept/removed points per edit size");
  demo->add_option("-o,--out", demo_args.out, "Output directory");
  demo->add_option("-n,--n-per-class", demo_args.n_per_class, "Points per class");
  demo->add_option("--mu0", demo_args.mu0, "Center of class 0")->expected(2);
  demo->add_option("--mu1", demo_args.mu1, "Center of class 1")->expected(2);
  demo->add_option("--variance", demo_args.variance, "Shared spherical variance");
  demo->add_option("--enn-k", demo_args.enn_ks, "Comma list of edit sizes")->delimiter(',');
  demo->add_option("-s,--seed", demo_args.seed, "Generator seed");

  std::string table_dir = "runs";
  CLI::App* table = app.add_subcommand("table", "Render cross-dataset tables from stored runs");
  table->add_option("--dir", table_dir, "Directory scanned for reports");

  std::string datasets_dir = "data";
  CLI::App* datasets = app.add_subcommand("datasets", "List the dataset registry");
  datasets->add_option("--data-dir", datasets_dir, "Where dataset files live")
      ->envname("DESFA_DATA_DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      if (run_args.dataset.empty() && run_args.from_manifest.empty())
        throw desfa::ValidationError("run needs --dataset or --from-manifest");
      return do_run(run_args);
    }
    if (demo->parsed()) return do_demo_enn(demo_args);
    if (table->parsed()) return do_table(table_dir);
    if (datasets->parsed()) return do_datasets(datasets_dir);
  } catch (const desfa::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const desfa::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
