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

// Writes a planted-topic text-attributed network in the dataset layout
// (edges.tsv, text.tsv, labels.tsv) for demos and smoke runs.

#include <iostream>

#include "CLI11.hpp"
#include "wane/errors.h"
#include "wane/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic text-attributed network"};
  wane::SyntheticConfig cfg;
  std::string out;
  app.add_option("--out", out, "Output dataset directory")->required();
  app.add_option("--vertices", cfg.num_vertices)->capture_default_str();
  app.add_option("--edges", cfg.num_edges)->capture_default_str();
  app.add_option("--classes", cfg.num_classes)->capture_default_str();
  app.add_option("--topics-per-class", cfg.topics_per_class)->capture_default_str();
  app.add_option("--keywords-per-topic", cfg.keywords_per_topic)->capture_default_str();
  app.add_option("--background-vocab", cfg.background_vocab)->capture_default_str();
  app.add_option("--mean-length", cfg.mean_length)->capture_default_str();
  app.add_option("--keyword-fraction", cfg.keyword_fraction)->capture_default_str();
  app.add_option("--cross-topic", cfg.cross_topic_prob)->capture_default_str();
  app.add_option("--seed", cfg.seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    wane::write_dataset(wane::generate_synthetic(cfg), out);
  } catch (const wane::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
