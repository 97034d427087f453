// Black-box checks of the command-line surface: exit codes, validation
// messages, report shapes. Usage: cli_tests <path-to-pauc-cli>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

int g_failures = 0;
std::string g_cli;
std::filesystem::path g_dir;

struct Run {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

Run run(const std::string& args) {
  const auto out_path = (g_dir / "out.txt").string();
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > \"" + out_path + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  Run r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

void expect(const char* what, bool ok, const std::string& extra = "") {
  std::printf("[%s] %s%s\n", ok ? "ok" : "FAIL", what,
              extra.empty() ? "" : (" -- " + extra).c_str());
  if (!ok) ++g_failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <pauc-cli-path>\n", argv[0]);
    return 64;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() / "paucopt_cli_tests";
  std::filesystem::create_directories(g_dir);

  {
    const auto r = run("--help");
    expect("--help exits 0 and lists subcommands",
           r.exit_code == 0 && r.output.find("train") != std::string::npos &&
               r.output.find("verify") != std::string::npos);
  }
  {
    const auto r = run("train --task opauc --kappa 10 --omega 0 --synthetic "
                       "10:90:2:2.0 --epochs 1");
    expect("infeasible kappa/omega exits nonzero with a concavity message",
           r.exit_code == 1 &&
               r.output.find("strong concavity") != std::string::npos,
           r.output);
  }
  {
    const auto r = run("train --task opauc --beta 0.0001 --synthetic "
                       "5:10:2:2.0 --epochs 1 --batch-size 5");
    expect("empty top-beta region exits nonzero",
           r.exit_code == 1 &&
               r.output.find("empty top-beta set") != std::string::npos,
           r.output);
  }
  {
    const auto r = run("train --csv /nonexistent.csv --epochs 1");
    expect("missing data exits nonzero", r.exit_code == 1);
  }
  {
    const auto trace = (g_dir / "t.csv").string();
    const auto ckpt = (g_dir / "m.json").string();
    const auto r = run("train --task opauc --beta 0.5 --synthetic 20:80:2:3.0 "
                       "--epochs 30 --batch-size 25 --seed 3 --trace \"" +
                       trace + "\" --checkpoint \"" + ckpt + "\"");
    expect("small training run exits 0", r.exit_code == 0, r.output);
    expect("trace and checkpoint files exist",
           std::filesystem::exists(trace) && std::filesystem::exists(ckpt));
    {
      // opauc column trends upward over the run
      std::ifstream in(trace);
      std::string line;
      std::getline(in, line);  // header
      std::vector<double> opauc;
      while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        for (int c = 0; c <= 4 && std::getline(cells, cell, ','); ++c) {
        }
        opauc.push_back(std::stod(cell));
      }
      const std::size_t q = opauc.size() / 4;
      double head = 0.0, tail = 0.0;
      for (std::size_t i = 0; i < q; ++i) {
        head += opauc[i];
        tail += opauc[opauc.size() - q + i];
      }
      expect("trace opauc column trends upward", !opauc.empty() && tail >= head);
    }

    const auto e = run("eval --checkpoint \"" + ckpt +
                       "\" --synthetic 20:80:2:3.0 --seed 3 --beta 0.5");
    bool json_ok = e.exit_code == 0;
    if (json_ok) {
      const auto j = nlohmann::json::parse(e.output, nullptr, false);
      json_ok = !j.is_discarded() && j.contains("auc") &&
                j.contains("opauc") && j.contains("tpauc") &&
                j.contains("region") && j["region"].contains("beta_hat");
    }
    expect("eval prints auc/opauc/tpauc/region JSON", json_ok, e.output);

    const auto full = run("eval --checkpoint \"" + ckpt +
                          "\" --synthetic 20:80:2:3.0 --seed 3 --alpha 1.0 "
                          "--beta 1.0");
    if (full.exit_code == 0) {
      const auto j = nlohmann::json::parse(full.output);
      expect("alpha = beta = 1 collapses auc == tpauc",
             j["auc"].get<double>() == j["tpauc"].get<double>());
    } else {
      expect("alpha = beta = 1 collapses auc == tpauc", false, full.output);
    }
  }
  {
    // CSV workflow: train on a file, evaluate the checkpoint on it
    const auto csv = (g_dir / "train.csv").string();
    {
      std::mt19937_64 rng(5);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::ofstream out(csv);
      out << "x1,x2,label\n";
      for (int i = 0; i < 120; ++i) {
        const bool pos = i < 24;
        const double mu = pos ? 2.0 : -2.0;
        out << mu + gauss(rng) << "," << mu + gauss(rng) << ","
            << (pos ? 1 : 0) << "\n";
      }
    }
    const auto ckpt = (g_dir / "csv_model.json").string();
    const auto r = run("train --task opauc --beta 0.5 --csv \"" + csv +
                       "\" --label-col label --epochs 40 --batch-size 30 "
                       "--seed 2 --trace \"" + (g_dir / "csv_t.csv").string() +
                       "\" --checkpoint \"" + ckpt + "\"");
    bool ok = r.exit_code == 0;
    double opauc = -1.0;
    if (ok) {
      const auto e = run("eval --checkpoint \"" + ckpt + "\" --csv \"" + csv +
                         "\" --label-col label --beta 0.5");
      ok = e.exit_code == 0;
      if (ok) {
        opauc = nlohmann::json::parse(e.output)["opauc"].get<double>();
        ok = opauc >= 0.95;
      }
    }
    expect("csv train/eval workflow reaches a separable optimum", ok,
           "opauc=" + std::to_string(opauc));
  }
  {
    const auto ckpt = (g_dir / "untrained.json").string();
    const auto r = run("train --task auc --synthetic 100:100:4:0.0 --epochs 0 "
                       "--batch-size 50 --seed 9 --trace \"" +
                       (g_dir / "u.csv").string() + "\" --checkpoint \"" +
                       ckpt + "\"");
    bool ok = r.exit_code == 0;
    double opauc = -1.0;
    if (ok) {
      const auto e = run("eval --checkpoint \"" + ckpt +
                         "\" --synthetic 100:100:4:0.0 --seed 9 --beta 1.0");
      ok = e.exit_code == 0;
      if (ok) {
        const auto j = nlohmann::json::parse(e.output);
        opauc = j["opauc"].get<double>();
        ok = opauc > 0.4 && opauc < 0.6;
      }
    }
    expect("untrained model scores chance level on symmetric data", ok,
           "opauc=" + std::to_string(opauc));
  }
  {
    const auto report = (g_dir / "verify_one.json").string();
    const auto r = run("verify --only atk_identity --report \"" +
                       report + "\"");
    bool ok = r.exit_code == 0;
    if (ok) {
      std::ifstream in(report);
      const auto j = nlohmann::json::parse(in);
      ok = j.is_array() && j.size() == 1 &&
           j[0]["name"] == "atk_identity" &&
           j[0]["pass"].get<bool>();
    }
    expect("verify --only produces a single-entry passing report", ok,
           r.output);
  }
  {
    const auto r = run("verify --only no_such_property");
    expect("unknown property name is a usage error", r.exit_code == 1);
  }
  {
    const auto r = run("verify --tol -1");
    expect("negative tolerance is a usage error", r.exit_code == 1,
           r.output);
  }
  {
    const auto out = (g_dir / "bench_tiny.csv").string();
    const auto r =
        run("bench --sizes 1,8 --min-ms 1 --out \"" + out + "\"");
    expect("bench handles a batch of one", r.exit_code == 0, r.output);
  }

  std::printf("%s\n", g_failures == 0 ? "all cli checks passed"
                                      : "cli checks FAILED");
  return g_failures;
}
