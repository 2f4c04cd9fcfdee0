// qgrass: color image-set recognition on the quaternionic Grassmannian.
//
//   qgrass represent <dataset_root> --out points/
//   qgrass distmat points/ --out run/
//   qgrass crossval run/distmat.csv --out run/
//   qgrass three setA/ setB/ setC/

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "qgrass/cli.hpp"

namespace {

struct Flags {
  std::vector<int> resize;
  std::optional<int> components;
  std::optional<int> train_per_class;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
  std::string config;
  bool store_projector = false;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--resize", f.resize, "Resize every image to T x M pixels (default 20 20)")
      ->expected(2)
      ->type_name("T M");
  cmd->add_option("--components", f.components, "Subspace dimension k (default 9)");
  cmd->add_option("--train-per-class", f.train_per_class, "Training sets per class (default 5)");
  cmd->add_option("--trials", f.trials, "Number of random splits (default 10)");
  cmd->add_option("--seed", f.seed, "Split seed (default 1)");
  cmd->add_option("--threads", f.threads, "Worker threads, 0 = all cores (default 0)");
  cmd->add_option("--out", f.out, "Output directory (default .)");
  cmd->add_option("--config", f.config, "JSON config file; flags override it")->check(CLI::ExistingFile);
  cmd->add_flag("--store-projector", f.store_projector, "Also write the full projector into point files");
  cmd->add_flag("-v,--verbose", f.verbose, "Debug logging");
}

qgrass::cli::RunConfig resolve(const Flags& f) {
  qgrass::cli::RunConfig c;
  if (!f.config.empty()) qgrass::cli::apply_config_file(qgrass::read_json_file(f.config), c);
  if (f.resize.size() == 2) {
    c.resize_rows = f.resize[0];
    c.resize_cols = f.resize[1];
  }
  if (f.components) c.components = *f.components;
  if (f.train_per_class) c.train_per_class = *f.train_per_class;
  if (f.trials) c.trials = *f.trials;
  if (f.seed) c.seed = *f.seed;
  if (f.threads) c.threads = *f.threads;
  if (f.out) c.output_dir = *f.out;
  if (f.store_projector) c.store_projector = true;
  if (f.verbose) spdlog::set_level(spdlog::level::debug);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("qgrass"));
  CLI::App app{"Color image-set recognition on the quaternionic Grassmannian"};
  app.require_subcommand(1);
  Flags flags;
  std::string root;
  std::string points_dir;
  std::string input;
  std::string set_a, set_b, set_c;

  auto* represent = app.add_subcommand("represent", "Turn <root>/<class>/<object>/ image sets into point files");
  represent->add_option("dataset_root", root, "Dataset root")->check(CLI::ExistingDirectory);
  add_common(represent, flags);

  auto* distmat = app.add_subcommand("distmat", "Pairwise geodesic distances between point files");
  distmat->add_option("points_dir", points_dir, "Directory written by 'represent'")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_common(distmat, flags);

  auto* crossval = app.add_subcommand("crossval", "Repeated random-split nearest-cluster evaluation");
  crossval->add_option("input", input, "distmat.csv or a points directory")->required()->check(CLI::ExistingPath);
  add_common(crossval, flags);

  auto* three = app.add_subcommand("three", "Decide which two of three image sets share a class");
  three->add_option("set_a", set_a)->required()->check(CLI::ExistingDirectory);
  three->add_option("set_b", set_b)->required()->check(CLI::ExistingDirectory);
  three->add_option("set_c", set_c)->required()->check(CLI::ExistingDirectory);
  add_common(three, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    qgrass::cli::RunConfig config = resolve(flags);
    if (represent->parsed()) {
      if (!root.empty()) config.dataset_root = root;
      if (config.dataset_root.empty()) throw qgrass::Error(qgrass::Errc::InvalidArgument, "dataset_root is required");
      const auto r = qgrass::cli::cmd_represent(config);
      spdlog::info("wrote {} point files, skipped {}", r.points.size(), r.skipped.size());
    } else if (distmat->parsed()) {
      const auto d = qgrass::cli::cmd_distmat(config, points_dir);
      spdlog::info("wrote {}x{} distance matrix to {}", d.size(), d.size(),
                   (config.output_dir / "distmat.csv").string());
    } else if (crossval->parsed()) {
      const auto report = qgrass::cli::cmd_crossval(config, input);
      std::cout << qgrass::cli::summary_line(report) << "\n";
    } else if (three->parsed()) {
      const auto v = qgrass::cli::cmd_three(config, set_a, set_b, set_c);
      const char names[] = {'A', 'B', 'C'};
      std::printf("d(A,B) = %.10g\nd(A,C) = %.10g\nd(B,C) = %.10g\n", v.d_ab, v.d_ac, v.d_bc);
      std::printf("same class: %c,%c\n", names[v.same[0]], names[v.same[1]]);
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
