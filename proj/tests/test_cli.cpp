// End-to-end tests that drive the built command-line binary as a child
// process. The binary's path is baked in at compile time (VPC_CLI_PATH);
// an environment variable of the same name overrides it.
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  if (const char* p = std::getenv("VPC_CLI_PATH")) return p;
#ifdef VPC_CLI_PATH
  return VPC_CLI_PATH;
#else
  FAIL("VPC_CLI_PATH must name the binary (define or environment)");
  return "";
#endif
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture =
      "cli_tmp/capture_" + std::to_string(counter++) + ".txt";
  fs::create_directories("cli_tmp");
  const std::string cmd =
      "\"" + cli_path() + "\" " + args + " > " + capture + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  std::ifstream in(capture, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  r.output = body.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

int line_count(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

struct TempDir {
  fs::path path;

  explicit TempDir(const char* stem) : path(fs::path("cli_tmp") / stem) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string str() const { return path.string(); }
  std::string sub(const std::string& file) const {
    return (path / file).string();
  }
};

}  // namespace

TEST_CASE("help and usage errors use the documented exit codes") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("generate --help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);            // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);  // unknown subcommand
  CHECK(run_cli("generate --bogus 1").exit_code == 2);
}

TEST_CASE("generate writes a reproducible dataset and reports its hash") {
  TempDir a("gen_a");
  TempDir b("gen_b");
  const std::string flags = "generate --channels 8 --samples 5 --seed 3 --out ";
  RunResult r1 = run_cli(flags + a.str());
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("dataset_hash ") != std::string::npos);
  CHECK(r1.output.find("rows 20") != std::string::npos);
  CHECK(fs::exists(a.sub("dataset.csv")));
  CHECK(fs::exists(a.sub("genspec.json")));

  RunResult r2 = run_cli(flags + b.str());
  CHECK(r2.exit_code == 0);
  CHECK(slurp(a.sub("dataset.csv")) == slurp(b.sub("dataset.csv")));
  CHECK(r1.output == r2.output);

  // A different seed must change the bytes.
  TempDir c("gen_c");
  run_cli("generate --channels 8 --samples 5 --seed 4 --out " + c.str());
  CHECK(slurp(a.sub("dataset.csv")) != slurp(c.sub("dataset.csv")));
}

TEST_CASE("generate rejects unsupported class counts") {
  TempDir dir("gen_bad");
  RunResult r = run_cli("generate --classes 3 --out " + dir.str());
  CHECK(r.exit_code == 2);
}

TEST_CASE("train runs a small two-class study end to end") {
  TempDir dir("train_binary");
  RunResult r = run_cli("train --samples 10 --epochs 2 --seed 1 --out " +
                        dir.str());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir.sub("binary_config.json")));
  CHECK(fs::exists(dir.sub("binary_seed1_report.json")));
  CHECK(line_count(slurp(dir.sub("binary_seed1_loss.csv"))) == 3);

  nlohmann::json report =
      nlohmann::json::parse(slurp(dir.sub("binary_seed1_report.json")));
  CHECK(report["param_count"] == 64);
  CHECK(report["train"]["loss"] == "mse");
  CHECK(report["generator"]["n_classes"] == 2);
  CHECK(report["generator"]["samples_per_class"] == 10);
}

TEST_CASE("the four-class study defaults to the shallow stack") {
  TempDir dir("train_multi");
  RunResult r = run_cli(
      "train --experiment multiclass --samples 10 --epochs 2 --seed 1 --out " +
      dir.str());
  CHECK(r.exit_code == 0);
  nlohmann::json report =
      nlohmann::json::parse(slurp(dir.sub("multiclass_seed1_report.json")));
  CHECK(report["param_count"] == 64);
  CHECK(report["train"]["loss"] == "cross_entropy");
}

TEST_CASE("the depth study trains both topologies at equal budget") {
  TempDir dir("train_ablation");
  RunResult r = run_cli(
      "train --experiment deep_ablation --samples 10 --epochs 2 --seeds 2 "
      "--out " +
      dir.str());
  CHECK(r.exit_code == 0);
  for (const char* stem : {"deep_ablation_deep_stack_seed1",
                           "deep_ablation_deep_stack_seed2",
                           "deep_ablation_deep_circuit_seed1",
                           "deep_ablation_deep_circuit_seed2"}) {
    const std::string file = dir.sub(std::string(stem) + "_report.json");
    REQUIRE_MESSAGE(fs::exists(file), file);
    nlohmann::json report = nlohmann::json::parse(slurp(file));
    CHECK(report["param_count"] == 128);
  }
}

TEST_CASE("config files supply defaults that explicit flags override") {
  TempDir dir("config_file");
  const std::string cfg = dir.sub("run.cfg");
  {
    std::ofstream out(cfg);
    out << "samples=10\nepochs=2\n";
  }
  RunResult file_only = run_cli("train --config " + cfg + " --seed 1 --out " +
                                dir.sub("d1"));
  CHECK(file_only.exit_code == 0);
  CHECK(line_count(slurp(dir.sub("d1/binary_seed1_loss.csv"))) == 3);

  RunResult overridden = run_cli("train --config " + cfg +
                                 " --epochs 1 --seed 1 --out " + dir.sub("d2"));
  CHECK(overridden.exit_code == 0);
  CHECK(line_count(slurp(dir.sub("d2/binary_seed1_loss.csv"))) == 2);
}

TEST_CASE("train consumes an existing dataset file") {
  TempDir dir("train_file");
  CHECK(run_cli("generate --samples 10 --classes 2 --seed 5 --out " +
                dir.str()).exit_code == 0);
  RunResult r = run_cli("train --data " + dir.sub("dataset.csv") +
                        " --epochs 2 --out " + dir.sub("fit"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("val_acc") != std::string::npos);
  CHECK(fs::exists(dir.sub("fit/train_config.json")));
  CHECK(fs::exists(dir.sub("fit/train_seed1_report.json")));

  RunResult missing = run_cli("train --data no_such_data.csv --out " +
                              dir.sub("fit2"));
  CHECK(missing.exit_code == 3);
}

TEST_CASE("evaluate replays a trained report on a chosen split") {
  TempDir dir("evaluate");
  CHECK(run_cli("train --samples 10 --epochs 2 --seed 1 --out " +
                dir.str()).exit_code == 0);
  const std::string report = dir.sub("binary_seed1_report.json");

  RunResult r = run_cli("evaluate --report " + report + " --out " +
                        dir.sub("eval"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("accuracy") != std::string::npos);
  CHECK(fs::exists(dir.sub("eval/evaluate_config.json")));
  CHECK(fs::exists(dir.sub("eval/evaluation.json")));
  CHECK(fs::exists(dir.sub("eval/evaluation_confusion.csv")));

  nlohmann::json ev =
      nlohmann::json::parse(slurp(dir.sub("eval/evaluation.json")));
  CHECK(ev["n_samples"] == 6);  // test split of 10 samples/class x 2 classes
  CHECK(ev.contains("accuracy"));
  CHECK(ev.contains("degenerate_count"));

  CHECK(run_cli("evaluate --report " + report + " --subset nonsense --out " +
                dir.sub("eval2")).exit_code == 2);
  CHECK(run_cli("evaluate --report missing_report.json --out " +
                dir.sub("eval3")).exit_code == 3);
}

TEST_CASE("gradient checking passes normally and fails a zero tolerance") {
  TempDir dir("gradcheck");
  RunResult ok = run_cli("gradcheck --out " + dir.str());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("max_rel_err") != std::string::npos);
  CHECK(fs::exists(dir.sub("gradcheck.json")));
  CHECK(fs::exists(dir.sub("gradcheck_config.json")));

  RunResult strict = run_cli("gradcheck --tol 0 --out " + dir.sub("strict"));
  CHECK(strict.exit_code == 5);  // real circuits always have some FD error

  // A parameter-free circuit has nothing to mismatch, even at tolerance zero.
  RunResult flat = run_cli(
      "gradcheck --circuit 'threads=4 mix-even' --channels 4 --tol 0 --out " +
      dir.sub("flat"));
  CHECK(flat.exit_code == 0);
  CHECK(flat.output.find("max_rel_err 0.000e+00") != std::string::npos);
}

TEST_CASE("benchmark prints and saves the comparison table") {
  TempDir dir("bench");
  RunResult r = run_cli("benchmark --samples 10 --epochs 2 --out " + dir.str());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("model") != std::string::npos);
  CHECK(fs::exists(dir.sub("benchmark.txt")));
  std::string csv = slurp(dir.sub("benchmark.csv"));
  CHECK(csv.find("single-stack,64,") != std::string::npos);
  CHECK(csv.find("deep-stack,128,") != std::string::npos);
  CHECK(csv.find("mlp,2372,") != std::string::npos);
}

TEST_CASE("invalid names surface as configuration errors") {
  TempDir dir("bad_cfg");
  CHECK(run_cli("train --optimizer sgd --samples 10 --epochs 1 --out " +
                dir.str()).exit_code == 2);
  CHECK(run_cli("train --circuit no-such-thing --samples 10 --epochs 1 "
                "--out " +
                dir.str()).exit_code == 2);
  CHECK(run_cli("train --loss hinge --samples 10 --epochs 1 --out " +
                dir.str()).exit_code == 2);
  CHECK(run_cli("gradcheck --task regression --out " + dir.str()).exit_code ==
        2);
}
