#include <CLI11.hpp>
#include <iostream>

#include "fid/cli.hpp"

namespace fid {

namespace {

struct FlagSet {
  std::string config_path;
  std::string input, output, tree, mode, tnorm_name, dump;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  std::size_t classes = 0;

  CLI::Option* input_opt = nullptr;
  CLI::Option* output_opt = nullptr;
  CLI::Option* tree_opt = nullptr;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* tnorm_opt = nullptr;
  CLI::Option* dump_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* classes_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_path, "flat key=value configuration file");
  flags.input_opt = cmd->add_option("--input", flags.input, "input CSV path");
  flags.output_opt = cmd->add_option("--out", flags.output, "output path");
  flags.tree_opt = cmd->add_option("--tree", flags.tree, "model file path");
  flags.mode_opt = cmd->add_option("--mode", flags.mode, "inference mode: set|exemplar");
  flags.tnorm_opt = cmd->add_option("--tnorm", flags.tnorm_name, "t-norm: product|minimum");
  flags.dump_opt = cmd->add_option("--dump-partitions", flags.dump,
                                   "write the fuzzy partitions as text (train only)");
  flags.seed_opt = cmd->add_option("--seed", flags.seed, "random seed");
  flags.threshold_opt =
      cmd->add_option("--threshold", flags.threshold, "fuzziness control threshold");
  flags.classes_opt = cmd->add_option("--classes", flags.classes,
                                      "number of effort fuzzy sets (classes)");
}

RunConfig build_config(const FlagSet& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) apply_config_file(config, flags.config_path);
  if (flags.input_opt->count() > 0) config.input = flags.input;
  if (flags.output_opt->count() > 0) config.output = flags.output;
  if (flags.tree_opt->count() > 0) config.tree_file = flags.tree;
  if (flags.mode_opt->count() > 0) config.mode = parse_inference_mode(flags.mode);
  if (flags.tnorm_opt->count() > 0) config.tnorm = parse_tnorm(flags.tnorm_name);
  if (flags.dump_opt->count() > 0) config.partition_dump = flags.dump;
  if (flags.seed_opt->count() > 0) config.seed = flags.seed;
  if (flags.threshold_opt->count() > 0) config.threshold = flags.threshold;
  if (flags.classes_opt->count() > 0) config.classes = flags.classes;
  return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"fidtree: fuzzy ID3 decision trees for software effort estimation"};
  app.require_subcommand(1);

  FlagSet synth_flags, preprocess_flags, train_flags, predict_flags, evaluate_flags,
      sweep_flags;
  CLI::App* synth = app.add_subcommand("synth", "generate synthetic project data");
  add_common_flags(synth, synth_flags);
  CLI::App* preprocess =
      app.add_subcommand("preprocess", "filter cases and impute missing values");
  add_common_flags(preprocess, preprocess_flags);
  CLI::App* train = app.add_subcommand("train", "grow a fuzzy decision tree");
  add_common_flags(train, train_flags);
  CLI::App* predict = app.add_subcommand("predict", "estimate effort for new projects");
  add_common_flags(predict, predict_flags);
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "train/test evaluation for one configuration");
  add_common_flags(evaluate, evaluate_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "threshold/class-count sweep report");
  add_common_flags(sweep, sweep_flags);

  // CLI11 wants mutable argv; feed it the reversed token list it expects.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return 2;
  }

  try {
    if (synth->parsed()) {
      cmd_synth(build_config(synth_flags));
    } else if (preprocess->parsed()) {
      cmd_preprocess(build_config(preprocess_flags));
    } else if (train->parsed()) {
      cmd_train(build_config(train_flags));
    } else if (predict->parsed()) {
      cmd_predict(build_config(predict_flags));
    } else if (evaluate->parsed()) {
      cmd_evaluate(build_config(evaluate_flags));
    } else if (sweep->parsed()) {
      cmd_sweep(build_config(sweep_flags));
    }
  } catch (const std::logic_error& error) {
    std::cerr << "configuration error: " << error.what() << "\n";
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return 3;
  }
  return 0;
}

}  // namespace fid
