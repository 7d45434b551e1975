#include <doctest.h>

#include <fstream>

#include "fid/cli.hpp"
#include "fid/io.hpp"
#include "fid/model_io.hpp"
#include "support/crisp_id3.hpp"
#include "support/temp_dir.hpp"

using namespace fid;

namespace {

const std::string kHeader(kCsvHeader);

std::string file_bytes(const std::filesystem::path& path) {
  return read_text_file(path);
}

}  // namespace

TEST_CASE("run_cli synth writes the requested rows deterministically") {
  testutil::TempDir dir;
  const auto config_path = dir.write("run.conf",
                                     "synth_count = 151\n"
                                     "seed = 42\n");
  const auto out1 = dir.path() / "a.csv";
  const auto out2 = dir.path() / "b.csv";
  CHECK(run_cli({"synth", "--config", config_path.string(), "--out", out1.string()}) == 0);
  CHECK(run_cli({"synth", "--config", config_path.string(), "--out", out2.string()}) == 0);

  const std::string bytes = file_bytes(out1);
  CHECK(bytes == file_bytes(out2));
  const std::size_t rows = std::count(bytes.begin(), bytes.end(), '\n');
  CHECK(rows == 152);  // header + 151 records
  CHECK(bytes.rfind(kHeader, 0) == 0);
}

TEST_CASE("run_cli maps config errors to exit code 2") {
  testutil::TempDir dir;
  const auto config_path = dir.write("bad.conf", "synth_missing_rate = 1.5\n");
  CHECK(run_cli({"synth", "--config", config_path.string(),
                 "--out", (dir.path() / "x.csv").string()}) == 2);

  const auto unknown = dir.write("unknown.conf", "no_such_key = 1\n");
  CHECK(run_cli({"synth", "--config", unknown.string(),
                 "--out", (dir.path() / "y.csv").string()}) == 2);

  // Unreadable value.
  const auto garbled = dir.write("garbled.conf", "seed = banana\n");
  CHECK(run_cli({"synth", "--config", garbled.string(),
                 "--out", (dir.path() / "z.csv").string()}) == 2);
}

TEST_CASE("flags override config keys") {
  testutil::TempDir dir;
  const auto config_path = dir.write("run.conf", "synth_count = 10\nseed = 1\n");
  const auto out_seed1 = dir.path() / "s1.csv";
  const auto out_seed2 = dir.path() / "s2.csv";
  CHECK(run_cli({"synth", "--config", config_path.string(), "--out", out_seed1.string()}) == 0);
  CHECK(run_cli({"synth", "--config", config_path.string(), "--seed", "2",
                 "--out", out_seed2.string()}) == 0);
  CHECK(file_bytes(out_seed1) != file_bytes(out_seed2));
}

namespace {

std::string crafted_rows() {
  std::string body = kHeader + "\n";
  auto row = [](const std::string& id, const std::string& quality, const std::string& ufp,
                const std::string& resource, const std::string& devtype) {
    return id + ",100,5,2,3,50,PC,1200," + quality + "," + ufp + "," + resource + "," +
           devtype + "\n";
  };
  body += row("r1", "A", "A", "1", "NewDevelopment");
  body += row("r2", "C", "A", "1", "NewDevelopment");
  body += row("r3", "A", "D", "1", "NewDevelopment");
  body += row("r4", "A", "A", "3", "NewDevelopment");
  body += row("r5", "A", "A", "1", "Enhancement");
  body += row("r6", "B", "B", "2", "NewDevelopment");
  body += row("r7", "D", "C", "1", "NewDevelopment");
  body += row("r8", "A", "A", "4", "NewDevelopment");
  body += row("r9", "A", "A", "1", "Redevelopment");
  body += row("r10", "B", "A", "1", "NewDevelopment");
  return body;
}

}  // namespace

TEST_CASE("cmd_preprocess summarizes the crafted 10-row file per criterion") {
  testutil::TempDir dir;
  const auto input = dir.write("raw.csv", crafted_rows());
  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "clean.csv").string();
  const auto summary = cmd_preprocess(config);
  CHECK(summary.filter.total == 10);
  CHECK(summary.filter.kept == 3);
  CHECK(summary.filter.data_quality == 2);
  CHECK(summary.filter.ufp == 2);
  CHECK(summary.filter.resource_level == 2);
  CHECK(summary.filter.development_type == 2);
  CHECK(summary.impute.dropped_missing_effort == 0);

  const auto cleaned = load_csv(config.output);
  CHECK(cleaned.records.size() == 3);
}

TEST_CASE("cmd_preprocess: already-clean input has zero discards") {
  testutil::TempDir dir;
  std::string body = kHeader + "\n";
  body += "p1,100,5,2,3,50,PC,1200,A,A,1,NewDevelopment\n";
  body += "p2,200,8,1,2,30,MidRange,2400,B,B,2,NewDevelopment\n";
  const auto input = dir.write("clean.csv", body);
  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "out.csv").string();
  const auto summary = cmd_preprocess(config);
  CHECK(summary.filter.kept == 2);
  CHECK(summary.filter.data_quality == 0);
  CHECK(summary.filter.ufp == 0);
  CHECK(summary.filter.resource_level == 0);
  CHECK(summary.filter.development_type == 0);
}

TEST_CASE("cmd_preprocess: fully filtered input still writes an empty file") {
  testutil::TempDir dir;
  std::string body = kHeader + "\n";
  body += "p1,100,5,2,3,50,PC,1200,C,A,1,NewDevelopment\n";
  body += "p2,200,8,1,2,30,PC,2400,C,B,2,NewDevelopment\n";
  const auto input = dir.write("rated_c.csv", body);
  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "out.csv").string();
  const auto summary = cmd_preprocess(config);
  CHECK(summary.filter.kept == 0);
  const std::string bytes = file_bytes(config.output);
  CHECK(bytes == kHeader + "\n");
}

namespace {

// Three records separable on function_points, efforts at 1000/2000/3000.
std::string crisp_train_csv() {
  std::string body = kHeader + "\n";
  body += "t1,0,5,2,3,50,PC,1000,A,A,1,NewDevelopment\n";
  body += "t2,5,5,2,3,50,PC,2000,A,A,1,NewDevelopment\n";
  body += "t3,10,5,2,3,50,PC,3000,A,A,1,NewDevelopment\n";
  return body;
}

RunConfig crisp_train_config(const testutil::TempDir& dir,
                             const std::filesystem::path& input) {
  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "model.txt").string();
  config.classes = 3;
  config.feature_set_counts = {3, 1, 1, 1, 1};
  config.threshold = 1.0;
  config.min_gain = 1e-9;
  return config;
}

}  // namespace

TEST_CASE("cmd_train: pure-class input gives a single-leaf model") {
  testutil::TempDir dir;
  std::string body = kHeader + "\n";
  body += "t1,1,5,2,3,50,PC,1500,A,A,1,NewDevelopment\n";
  body += "t2,9,5,2,3,50,PC,1500,A,A,1,NewDevelopment\n";
  const auto input = dir.write("pure.csv", body);
  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "model.txt").string();
  config.classes = 4;
  const auto stats = cmd_train(config);
  CHECK(stats.node_count == 1);
  CHECK(stats.leaf_count == 1);

  const auto tree = load_model(config.output);
  REQUIRE(tree.root != nullptr);
  CHECK(tree.root->is_leaf());
}

TEST_CASE("cmd_train: crisp toy dataset grows the expected depth-1 tree") {
  testutil::TempDir dir;
  const auto input = dir.write("crisp.csv", crisp_train_csv());
  const RunConfig config = crisp_train_config(dir, input);
  const auto stats = cmd_train(config);
  CHECK(stats.node_count == 4);
  CHECK(stats.leaf_count == 3);
  CHECK(stats.max_depth == 1);

  const auto tree = load_model(config.output);
  REQUIRE(!tree.root->is_leaf());
  CHECK(*tree.root->split_attribute == Feature::FunctionPoints);
  REQUIRE(tree.root->children.size() == 3);
  for (const auto& child : tree.root->children) {
    CHECK(child->is_leaf());
    CHECK(*child->leaf_criterion == StopCriterion::ClassThreshold);
  }

  // The same data as a discrete instance: the reference ID3 tree must be
  // structurally identical to the reloaded model.
  crisp::CrispDataset discrete;
  discrete.feature_arity = {3};
  discrete.class_count = 3;
  discrete.rows = {{{0}, 0}, {{1}, 1}, {{2}, 2}};
  const auto reference = crisp::id3_build(discrete, 1e-9);
  CHECK(crisp::same_structure(*tree.root, *reference.root,
                              {static_cast<int>(Feature::FunctionPoints)}));

  // Retraining produces a byte-identical model file.
  RunConfig again = config;
  again.output = (dir.path() / "model2.txt").string();
  cmd_train(again);
  CHECK(file_bytes(config.output) == file_bytes(again.output));
}

TEST_CASE("cmd_predict reproduces in-process predictions exactly") {
  testutil::TempDir dir;
  SynthSpec spec;
  spec.record_count = 40;
  spec.seed = 77;
  spec.noise_level = 200.0;
  const auto raw = synth_generate(spec);
  const auto train_path = dir.path() / "train.csv";
  write_csv(raw, train_path);

  RunConfig train_config;
  train_config.input = train_path.string();
  train_config.output = (dir.path() / "model.txt").string();
  train_config.classes = 6;
  cmd_train(train_config);

  // In-process reference predictions through the same model file.
  const auto tree = load_model(train_config.output);
  std::vector<double> expected;
  for (const auto& record : raw.records) {
    expected.push_back(predict_effort(tree, record, InferenceMode::ExemplarBased));
  }

  RunConfig predict_config;
  predict_config.tree_file = train_config.output;
  predict_config.input = train_path.string();
  predict_config.output = (dir.path() / "pred.csv").string();
  CHECK(cmd_predict(predict_config) == raw.records.size());

  std::ifstream file(predict_config.output);
  std::string line;
  std::getline(file, line);  // header
  CHECK(line ==
        "project_id,predicted_hours,mode,leaf_1,activation_1,leaf_2,activation_2,"
        "leaf_3,activation_3");
  std::size_t index = 0;
  while (std::getline(file, line)) {
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const double hours =
        parse_double(line.substr(first_comma + 1, second_comma - first_comma - 1));
    CHECK(hours == expected[index]);  // bit-exact round trip
    ++index;
  }
  CHECK(index == expected.size());
}

TEST_CASE("cmd_predict: missing features fail with exit code 3 via run_cli") {
  testutil::TempDir dir;
  const auto train_path = dir.write("train.csv", crisp_train_csv());
  RunConfig train_config = crisp_train_config(dir, train_path);
  cmd_train(train_config);

  std::string body = kHeader + "\n";
  body += "q1,5,,2,3,50,PC,,A,A,1,NewDevelopment\n";  // missing max_team_size
  const auto records = dir.write("records.csv", body);
  CHECK(run_cli({"predict", "--tree", train_config.output, "--input", records.string(),
                 "--out", (dir.path() / "p.csv").string()}) == 3);

  // Empty input produces a header-only file.
  const auto empty = dir.write("empty.csv", kHeader + "\n");
  const auto out = dir.path() / "empty_out.csv";
  CHECK(run_cli({"predict", "--tree", train_config.output, "--input", empty.string(),
                 "--out", out.string()}) == 0);
  CHECK(file_bytes(out) ==
        "project_id,predicted_hours,mode,leaf_1,activation_1,leaf_2,activation_2,"
        "leaf_3,activation_3\n");
}

TEST_CASE("cmd_sweep: default grid yields 18 deterministic rows plus series files") {
  testutil::TempDir dir;
  SynthSpec spec;
  spec.record_count = 80;
  spec.seed = 3;
  spec.noise_level = 400.0;
  const auto ds = impute_mmsi(filter_cases(synth_generate(spec)));
  const auto input = dir.path() / "data.csv";
  write_csv(ds, input);

  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "report.csv").string();
  config.train_fraction = 0.5;
  config.sweep_thresholds = {0.2, 0.5, 0.8};
  config.sweep_classes = {5, 7};

  const auto report = cmd_sweep(config);
  CHECK(report.rows.size() == 6);

  RunConfig second = config;
  second.output = (dir.path() / "report2.csv").string();
  cmd_sweep(second);
  CHECK(file_bytes(config.output) == file_bytes(second.output));

  for (const std::size_t k : {5, 7}) {
    const auto mmre_series = dir.path() / ("report_mmre_k" + std::to_string(k) + ".txt");
    const auto pred_series = dir.path() / ("report_pred25_k" + std::to_string(k) + ".txt");
    const std::string mmre_bytes = file_bytes(mmre_series);
    CHECK(std::count(mmre_bytes.begin(), mmre_bytes.end(), '\n') == 3);
    CHECK(!file_bytes(pred_series).empty());
  }
}

TEST_CASE("cmd_evaluate produces a single-row report") {
  testutil::TempDir dir;
  SynthSpec spec;
  spec.record_count = 50;
  spec.seed = 31;
  const auto ds = impute_mmsi(filter_cases(synth_generate(spec)));
  const auto input = dir.path() / "data.csv";
  write_csv(ds, input);

  RunConfig config;
  config.input = input.string();
  config.output = (dir.path() / "eval.csv").string();
  config.train_fraction = 0.5;
  config.threshold = 0.4;
  config.classes = 8;
  const auto report = cmd_evaluate(config);
  REQUIRE(report.rows.size() == 1);
  CHECK(report.rows[0].threshold == doctest::Approx(0.4));
  CHECK(report.rows[0].class_count == 8);
}

TEST_CASE("run_cli rejects missing subcommands and bad data with distinct codes") {
  testutil::TempDir dir;
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  // Missing input file: data error.
  CHECK(run_cli({"preprocess", "--input", (dir.path() / "nope.csv").string(),
                 "--out", (dir.path() / "out.csv").string()}) == 3);
}
