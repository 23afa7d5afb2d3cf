// Copyright (c) 2026 The WANE Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: train, eval-link, eval-classify, export,
// inspect-alignment.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wane/checkpoint.h"
#include "wane/dataset.h"
#include "wane/errors.h"
#include "wane/eval.h"
#include "wane/trainer.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFlags = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct CommonFlags {
  std::string data;
  std::string config_file;
  std::size_t threads = 1;
  bool nondeterministic = false;
};

// Applies key=value lines from --config to options not given on the command
// line, so flags always win.
void apply_config_file(CLI::App& app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw wane::ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  for (const auto& [key, value] : wane::parse_key_values(buf.str())) {
    CLI::Option* opt = nullptr;
    try {
      opt = app.get_option("--" + key);
    } catch (const CLI::OptionNotFound&) {
      throw wane::ConfigError("config file " + path + ": unknown key '" + key + "'");
    }
    if (opt->count() > 0) continue;
    if (opt->get_type_size() == 0) {
      if (value == "1" || value == "true") opt->add_result("true");
      else if (value == "0" || value == "false") continue;
      else throw wane::ConfigError("config file " + path + ": flag '" + key + "' expects true/false");
    } else {
      opt->add_result(value);
    }
    opt->run_callback();
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw wane::DataError("cannot write " + path.string());
  out << text;
}

std::string lookup(const std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
  for (const auto& [k, v] : kv)
    if (k == key) return v;
  return {};
}

// Everything an evaluation subcommand needs from a training run directory.
struct LoadedRun {
  wane::Checkpoint checkpoint;
  wane::Dataset dataset;
  wane::EdgeSplit split;
  std::vector<std::pair<std::string, std::string>> config;
};

LoadedRun load_run(const std::string& run_dir, const std::string& data_flag, const std::string& split_flag) {
  LoadedRun run;
  run.checkpoint = wane::load_checkpoint(fs::path(run_dir) / "model.ckpt");
  run.config = wane::parse_key_values(run.checkpoint.meta.config_echo);
  const std::string data = data_flag.empty() ? lookup(run.config, "data") : data_flag;
  if (data.empty()) throw wane::ConfigError("no --data given and the run does not record one");
  const std::string max_len = lookup(run.config, "max_len");
  run.dataset = wane::load_dataset(data, max_len.empty() ? wane::kDefaultMaxLen : std::stoul(max_len));
  const fs::path split_path = split_flag.empty() ? fs::path(run_dir) / "split.tsv" : fs::path(split_flag);
  run.split = wane::load_split(split_path, run.dataset.graph.num_vertices());
  if (wane::split_hash(run.split) != run.checkpoint.meta.split_hash) {
    throw wane::DataError("split " + split_path.string() +
                          " does not match the split recorded in the checkpoint (hash mismatch)");
  }
  const auto& p = run.checkpoint.params;
  if (p.num_vertices() != run.dataset.graph.num_vertices() || p.vocab_size() != run.dataset.corpus.vocab.size()) {
    throw wane::DataError("checkpoint tables do not match the dataset (vertex or vocabulary count differs)");
  }
  return run;
}

void emit_report(const wane::EvalReport& report, const fs::path& path) {
  std::ostringstream os;
  report.write_tsv(os);
  std::cout << os.str();
  write_file(path, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WANE: word-alignment network embeddings"};
  app.require_subcommand(1);

  // train
  wane::TrainConfig tc;
  CommonFlags train_flags;
  std::string out_dir = "run";
  std::string mode = "wane-ww", align = "submult", agg = "max";
  double ratio = 0.55;
  bool no_early_stop = false;
  auto* train = app.add_subcommand("train", "Split the edges, train a model and write a run directory");
  train->add_option("--data", train_flags.data, "Dataset directory (edges.tsv, text.tsv)")->required();
  train->add_option("--out", out_dir, "Output run directory")->capture_default_str();
  train->add_option("--config", train_flags.config_file, "key=value file; command-line flags take precedence");
  train->add_option("--mode", mode, "wane | wane-wc | wane-ww")->capture_default_str();
  train->add_option("--align", align, "sub | mult | submult (wane-ww)")->capture_default_str();
  train->add_option("--agg", agg, "max | mean (wane-ww)")->capture_default_str();
  train->add_option("--ratio", ratio, "Fraction of edges kept for training")->capture_default_str();
  train->add_option("--seed", tc.seed, "Seed for the split and training")->capture_default_str();
  train->add_option("--K", tc.negatives, "Negative samples per positive pair (1, 3 or 5)")->capture_default_str();
  train->add_flag("--allow-any-k", tc.allow_any_k, "Accept any K >= 1");
  train->add_flag("--negatives-per-term", tc.negatives_per_term,
                  "Draw separate negatives for each loss term and direction (default: one set per edge)");
  train->add_option("--keep-prob", tc.keep_prob, "Dropout KEEP probability on word embeddings")->capture_default_str();
  train->add_option("--lr", tc.learning_rate, "Adam learning rate")->capture_default_str();
  train->add_option("--batch-size", tc.batch_size, "Edges per batch")->capture_default_str();
  train->add_option("--epochs", tc.epochs, "Maximum epochs (|E_train| / batch steps each)")->capture_default_str();
  train->add_option("--max-steps", tc.max_steps, "Fixed number of steps (overrides --epochs)");
  train->add_flag("--no-early-stop", no_early_stop, "Disable the loss-plateau stop");
  train->add_option("--alpha1", tc.model.alpha[0], "Weight of the text|text term")->capture_default_str();
  train->add_option("--alpha2", tc.model.alpha[1], "Weight of the text|structure term")->capture_default_str();
  train->add_option("--alpha3", tc.model.alpha[2], "Weight of the structure|text term")->capture_default_str();
  train->add_option("--struct-dim", tc.model.struct_dim, "Structural (= textual) dimension")->capture_default_str();
  train->add_option("--max-len", tc.max_len, "Tokens kept per text")->capture_default_str();
  train->add_option("--threads", train_flags.threads, "Worker threads for batch gradients")->capture_default_str();
  train->add_flag("--nondeterministic", train_flags.nondeterministic,
                  "Dynamic scheduling across threads (reduction order not fixed)");
  train->add_flag("--deterministic", "Fixed reduction order (default)");
  bool quiet = false;
  train->add_flag("--quiet", quiet, "No per-epoch progress on stderr");

  // shared evaluation flags
  std::string run_dir = "run", data_dir, split_file, output;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--run", run_dir, "Run directory written by 'train'")->capture_default_str();
    sub->add_option("--data", data_dir, "Dataset directory (defaults to the one recorded at training)");
    sub->add_option("--split", split_file, "Split file (defaults to <run>/split.tsv)");
  };

  auto* eval_link = app.add_subcommand("eval-link", "Link-prediction AUC on the held-out edges");
  add_run_flags(eval_link);
  eval_link->add_option("--report", output, "Report path (default <run>/eval_link.tsv)");

  wane::ClassifyConfig cc;
  auto* eval_cls = app.add_subcommand("eval-classify", "Vertex classification on global embeddings");
  add_run_flags(eval_cls);
  eval_cls->add_option("--label-ratio", cc.train_ratio, "Fraction of labelled vertices used for training")
      ->capture_default_str();
  eval_cls->add_option("--repeats", cc.repeats, "Random splits averaged")->capture_default_str();
  eval_cls->add_option("--seed", cc.seed, "Seed for the label splits")->capture_default_str();
  eval_cls->add_option("--report", output, "Report path (default <run>/eval_classify.tsv)");

  auto* exp = app.add_subcommand("export", "Write global embeddings as TSV");
  add_run_flags(exp);
  exp->add_option("--output", output, "Output path (default <run>/embeddings.tsv)");

  std::string edge;
  auto* inspect = app.add_subcommand("inspect-alignment", "Matching-vector norms per token for one vertex pair");
  add_run_flags(inspect);
  inspect->add_option("--edge", edge, "Vertex pair as i,j")->required();
  inspect->add_option("--output", output, "Output path (default <run>/alignment_<i>_<j>.tsv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitFlags;
  }

  try {
    if (train->parsed()) {
      apply_config_file(*train, train_flags.config_file);
      tc.model.mode = wane::parse_mode(mode);
      tc.model.align = wane::parse_align(align);
      tc.model.agg = wane::parse_agg(agg);
      tc.early_stop = !no_early_stop;
      tc.threads = train_flags.threads;
      tc.deterministic = !train_flags.nondeterministic;
      tc.validate();
      if (!(ratio > 0.0 && ratio <= 1.0)) throw wane::ConfigError("--ratio must lie in (0, 1]");

      const fs::path data = fs::absolute(train_flags.data);
      const wane::Dataset ds = wane::load_dataset(data, tc.max_len);
      const wane::EdgeSplit split = wane::split_edges(ds.graph, ratio, tc.seed);

      std::ostringstream echo;
      echo << tc.echo() << "ratio=" << ratio << "\n"
           << "data=" << data.string() << "\n";
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "config.txt", echo.str());
      wane::save_split(split, fs::path(out_dir) / "split.tsv");

      auto progress = [&](std::size_t epoch, double loss) {
        if (!quiet) std::fprintf(stderr, "epoch %zu  loss %.6f\n", epoch + 1, loss);
      };
      const auto result = wane::train(tc, split.train, ds.corpus, progress);
      wane::save_checkpoint(result.params, {echo.str(), wane::split_hash(split)},
                            fs::path(out_dir) / "model.ckpt");
      std::ofstream log(fs::path(out_dir) / "train_log.tsv", std::ios::trunc);
      result.log.write_tsv(log);
      std::cout << echo.str() << "steps=" << result.log.step_loss.size() << "\n"
                << "final_loss=" << (result.log.step_loss.empty() ? 0.0 : result.log.step_loss.back()) << "\n";
      return 0;
    }

    const LoadedRun run = load_run(run_dir, data_dir, split_file);
    const auto& params = run.checkpoint.params;
    const auto& corpus = run.dataset.corpus;
    const auto seed_str = lookup(run.config, "seed");

    if (eval_link->parsed()) {
      wane::EvalReport report;
      report.task = "link-prediction";
      report.metric = "auc";
      report.value = wane::link_prediction_auc(run.split.test_pos, run.split.test_neg, params, corpus);
      report.seed = seed_str.empty() ? 0 : std::stoull(seed_str);
      report.config = run.config;
      emit_report(report, output.empty() ? fs::path(run_dir) / "eval_link.tsv" : fs::path(output));
    } else if (eval_cls->parsed()) {
      if (!run.dataset.labels) throw wane::DataError("eval-classify needs labels.tsv in the dataset directory");
      const wane::Matrix emb = wane::global_embeddings(params, run.split.train, corpus);
      const auto& labels = *run.dataset.labels;
      const auto result = wane::classify(emb, labels.label_of, labels.num_classes(), cc);
      wane::EvalReport report;
      report.task = "vertex-classification";
      report.metric = "accuracy";
      report.value = result.mean_accuracy;
      report.seed = cc.seed;
      report.repeats = result.accuracies;
      report.config = run.config;
      report.config.emplace_back("label_ratio", std::to_string(cc.train_ratio));
      emit_report(report, output.empty() ? fs::path(run_dir) / "eval_classify.tsv" : fs::path(output));
    } else if (exp->parsed()) {
      const fs::path path = output.empty() ? fs::path(run_dir) / "embeddings.tsv" : fs::path(output);
      wane::export_embeddings(params, run.split.train, corpus, path);
      std::cout << "wrote " << run.split.train.num_vertices() << " embeddings to " << path.string() << "\n";
    } else if (inspect->parsed()) {
      unsigned long i = 0, j = 0;
      char sep = 0;
      std::istringstream parse(edge);
      if (!(parse >> i >> sep >> j) || sep != ',' || !parse.eof()) {
        throw wane::ConfigError("--edge expects i,j");
      }
      const fs::path path = output.empty()
                                ? fs::path(run_dir) / ("alignment_" + std::to_string(i) + "_" + std::to_string(j) + ".tsv")
                                : fs::path(output);
      wane::inspect_alignment(static_cast<wane::VertexId>(i), static_cast<wane::VertexId>(j), params, corpus, path);
      std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
  } catch (const wane::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFlags;
  } catch (const wane::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const wane::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
