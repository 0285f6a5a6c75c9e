// End-to-end checks of the qnc binary: determinism, wire formats, exit codes.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kCli = QNC_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("qnc_cli_test_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("synth-gen is byte-identical across runs") {
  const auto a = temp_file("synth_a.csv");
  const auto b = temp_file("synth_b.csv");
  CHECK(run("synth-gen --k 4 --d 8 --seed 7 --out " + a.string()).exit_code == 0);
  CHECK(run("synth-gen --k 4 --d 8 --seed 7 --out " + b.string()).exit_code == 0);
  const std::string ta = slurp(a), tb = slurp(b);
  CHECK(!ta.empty());
  CHECK(ta == tb);
  CHECK(ta.find("\"seed\":7") != std::string::npos);  // config embedded
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("distance of a vector with itself is zero") {
  const auto vec = temp_file("vec.txt");
  {
    std::ofstream out(vec);
    out << "0.3 1.4 0.2 0.9\n";
  }
  const RunResult r =
      run("distance --x " + vec.string() + " --y " + vec.string() + " --shots 64 --mitigated");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("estimate").at("l_hat") == 0.0);
  CHECK(j.at("estimate").at("p_hat") == 1.0);
  CHECK(j.at("config").at("shots") == 64);
  fs::remove(vec);
}

TEST_CASE("distance runs are reproducible and can emit shot records") {
  const auto x = temp_file("x.txt");
  const auto y = temp_file("y.txt");
  {
    std::ofstream(x) << "1,0,0,0.5\n";
    std::ofstream(y) << "0.2,0.9,0,0\n";
  }
  const std::string args = "distance --x " + x.string() + " --y " + y.string() +
                           " --shots 500 --noise 0.02,0.97 --seed 9 --mitigated";
  const RunResult a = run(args);
  const RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto shots = temp_file("shots.json");
  CHECK(run(args + " --emit-shots " + shots.string()).exit_code == 0);
  const json rec = json::parse(slurp(shots));
  CHECK(rec.at("mode") == "full-readout");
  CHECK(rec.at("total") == 500);
  std::uint64_t sum = 0;
  for (const auto& [k, v] : rec.at("counts").items()) sum += v.get<std::uint64_t>();
  CHECK(sum == 500);
  fs::remove(x);
  fs::remove(y);
  fs::remove(shots);
}

TEST_CASE("classify produces a full report on synthetic data") {
  const auto data = temp_file("train.csv");
  const auto report = temp_file("report.json");
  REQUIRE(run("synth-gen --k 2 --d 4 --seed 3 --out " + data.string()).exit_code == 0);
  const RunResult r = run("classify --train " + data.string() +
                          " --shots 300 --mitigated --shift --seed 4 --out " + report.string());
  CHECK(r.exit_code == 0);
  const json j = json::parse(slurp(report));
  CHECK(j.at("classical").at("accuracy").is_number());
  CHECK(j.at("quantum").at("agreement_with_classical").is_number());
  CHECK(j.at("quantum").at("labels").size() == 20);
  CHECK(j.at("config").at("seed") == 4);
  fs::remove(data);
  fs::remove(report);
}

TEST_CASE("the bundled iris table classifies at the known baseline") {
  const std::string iris = std::string(QNC_SOURCE_DIR) + "/data/iris.csv";
  const RunResult r = run("classify --train " + iris + " --classical-only --out -");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j.at("classical").at("accuracy").get<double>() - 139.0 / 150.0) < 1e-12);
  CHECK(!j.contains("quantum"));
}

TEST_CASE("exact mode classification matches the classical labels") {
  const auto data = temp_file("train_exact.csv");
  REQUIRE(run("synth-gen --k 2 --d 4 --seed 5 --out " + data.string()).exit_code == 0);
  const RunResult r = run("classify --train " + data.string() + " --exact --shift --out -");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("quantum").at("agreement_with_classical") == 1.0);
  fs::remove(data);
}

TEST_CASE("pca and ingest subcommands chain") {
  const auto data = temp_file("pca_in.csv");
  const auto out = temp_file("pca_out.csv");
  REQUIRE(run("synth-gen --k 2 --d 8 --seed 11 --out " + data.string()).exit_code == 0);
  CHECK(run("pca --in " + data.string() + " --q 2 --out " + out.string()).exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.find("f0,f1,label") != std::string::npos);

  const auto shifted = temp_file("shifted.csv");
  CHECK(run("ingest --csv " + out.string() + " --shift --pad --out " + shifted.string())
            .exit_code == 0);
  CHECK(slurp(shifted).find("nonnegativity_shift") != std::string::npos);
  fs::remove(data);
  fs::remove(out);
  fs::remove(shifted);
}

TEST_CASE("noise-fit recovers a planted slope") {
  const auto pairs = temp_file("pairs.csv");
  {
    std::ofstream out(pairs);
    out << "c_sim,c_exp\n";
    const double slope = 0.294;  // 0.96^30-ish
    for (int i = 0; i <= 10; ++i) {
      const double c = i / 10.0;
      out << c << "," << slope * c + 0.01 << "\n";
    }
  }
  const RunResult r = run("noise-fit --pairs " + pairs.string() + " --m 30");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j.at("slope").get<double>() - 0.294) < 1e-9);
  CHECK(std::abs(j.at("intercept").get<double>() - 0.01) < 1e-9);
  CHECK(std::abs(j.at("fidelity").get<double>() - std::pow(0.294, 1.0 / 30)) < 1e-9);
  fs::remove(pairs);
}

TEST_CASE("report emits the scatter csv the noise fit consumes") {
  const auto data = temp_file("rep_train.csv");
  const auto pairs = temp_file("rep_pairs.csv");
  REQUIRE(run("synth-gen --k 2 --d 8 --seed 13 --out " + data.string()).exit_code == 0);
  CHECK(run("report --train " + data.string() +
            " --shots 300 --noise 0,0.96 --seed 2 --shift --out " + pairs.string())
            .exit_code == 0);
  const std::string text = slurp(pairs);
  CHECK(text.find("c_sim,c_exp_raw,c_exp_mitigated,n,m") != std::string::npos);

  const RunResult fit = run("noise-fit --pairs " + pairs.string() + " --m 30");
  CHECK(fit.exit_code == 0);
  const double f = json::parse(fit.out).at("fidelity").get<double>();
  CHECK(std::abs(f - 0.96) < 0.02);  // 40 noisy pairs, loose check
  fs::remove(data);
  fs::remove(pairs);
}

TEST_CASE("error paths use distinct exit codes") {
  CHECK(run("distance --x /nonexistent_x --y /nonexistent_y").exit_code == 3);

  const auto bad = temp_file("bad.csv");
  {
    std::ofstream(bad) << "f0,f1,label\n1.0,nope,a\n";
  }
  CHECK(run("classify --train " + bad.string()).exit_code == 4);
  fs::remove(bad);

  CHECK(run("synth-gen --k 60 --d 2 --min-sep 0.9 --seed 1 --out /dev/null").exit_code == 5);
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("").exit_code == 2);
}

TEST_CASE("loader compile emits angles and circuits") {
  const RunResult r = run("loader compile --values 1,0,0,0 --emit-angles -");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("dimension") == 4);
  CHECK(j.at("theta") == json::array({0.0, 0.0, 0.0}));
  CHECK(j.at("r") == json::array({1.0, 1.0, 0.0}));

  const RunResult c = run("loader compile --values 0.5,0.5,0.5,0.5 --emit-circuit -");
  CHECK(c.exit_code == 0);
  const json jc = json::parse(c.out);
  CHECK(jc.at("qubits") == 4);
  CHECK(jc.at("layers").size() == 3);

  const RunResult o = run("loader compile --values 0.5,0.5,0.5,0.5 --emit-circuit - --optimized");
  CHECK(o.exit_code == 0);
  CHECK(json::parse(o.out).at("qubits") == 4);
}
