#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "translab/bounds.hpp"
#include "translab/scenarios.hpp"

namespace {

int run_command(const std::string& scenario, const std::string& config_path,
                const std::map<std::string, std::string>& flag_params,
                const std::string& format, const std::string& out_path) {
  translab::ScenarioSpec spec;
  spec.name = scenario;

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    nlohmann::json j;
    in >> j;
    if (j.contains("scenario")) spec.name = j.at("scenario").get<std::string>();
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") continue;
      spec.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
  }
  for (const auto& [key, value] : flag_params) spec.params[key] = value;  // flags win

  if (spec.name.empty()) throw std::invalid_argument("no scenario given");

  translab::ExperimentConfig base;
  if (auto it = spec.params.find("seed"); it != spec.params.end())
    base.master_seed = std::stoull(it->second);
  if (auto it = spec.params.find("threads"); it != spec.params.end())
    base.threads = std::stoi(it->second);

  const translab::OutputFormat fmt =
      format == "jsonl" ? translab::OutputFormat::jsonl : translab::OutputFormat::csv;

  if (out_path.empty() || out_path == "-")
    return translab::run_scenario(spec, base, std::cout, fmt);
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  return translab::run_scenario(spec, base, out, fmt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transductive learning verification lab: scenario runner and bound tables"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "Run a named scenario and emit verdict rows");
  std::string scenario, config_path, format = "csv", out_path;
  std::string d, m, u, epsilon, delta, trials, seed, threads, n_max, C;
  run->add_option("--scenario", scenario, "one of: tlsi-lower-prob, tlsi-lower-expect, "
                  "tlsii-lower-prob, tlsii-lower-expect, erm-upper-tlsi, erm-upper-tlsii, "
                  "hanneke-upper, ssl-chain, lemma-verify, rate-sweep, cm06-flaw");
  run->add_option("--config", config_path, "JSON config file; flags override its values");
  run->add_option("--d", d, "VC dimension target");
  run->add_option("--m", m, "labeled count");
  run->add_option("--u", u, "unlabeled count");
  run->add_option("--epsilon", epsilon, "accuracy, exact rational accepted (e.g. 1/1024)");
  run->add_option("--delta", delta, "confidence parameter");
  run->add_option("--trials", trials, "Monte Carlo trial count");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--threads", threads, "worker thread count");
  run->add_option("--n-max", n_max, "lemma-verify range cap");
  run->add_option("--C", C, "caller-supplied constant for hanneke-upper");
  run->add_option("--format", format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  run->add_option("--out", out_path, "output path (default stdout)");

  // --- bounds-batch ---
  auto* batch = app.add_subcommand("bounds-batch",
                                   "Evaluate every bound for a JSON array of parameter points");
  std::string batch_in, batch_out;
  batch->add_option("--in", batch_in, "JSON array of {d, m, u, epsilon, delta} points")
      ->required();
  batch->add_option("--out", batch_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::map<std::string, std::string> params;
      auto put = [&params](const char* key, const std::string& v) {
        if (!v.empty()) params[key] = v;
      };
      put("d", d);
      put("m", m);
      put("u", u);
      put("epsilon", epsilon);
      put("delta", delta);
      put("trials", trials);
      put("seed", seed);
      put("threads", threads);
      put("n_max", n_max);
      put("C", C);
      return run_command(scenario, config_path, params, format, out_path);
    }
    if (batch->parsed()) {
      std::ifstream in(batch_in);
      if (!in) throw std::invalid_argument("cannot open input file: " + batch_in);
      std::stringstream buffer;
      buffer << in.rdbuf();
      const std::string csv = translab::bounds_batch_csv(buffer.str());
      if (batch_out.empty() || batch_out == "-") {
        std::cout << csv;
      } else {
        std::ofstream out(batch_out);
        if (!out) throw std::invalid_argument("cannot open output file: " + batch_out);
        out << csv;
      }
      return 0;
    }
  } catch (const std::length_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return translab::kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return translab::kExitBadConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return translab::kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return translab::kExitBadConfig;
}
