// Copyright 2026 The paramine Authors.
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

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <thread>

#include "paramine/pipeline/stages.hpp"

namespace {

using namespace paramine;

// Blocks SIGINT/SIGTERM and stops the annotation server when one arrives.
void InstallServeSignalHandler() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread([set] {
    int sig = 0;
    sigwait(&set, &sig);
    if (auto *server = pipeline::detail::ActiveServer().load()) {
      PARAMINE_LOG(Info) << "signal " << sig << ", shutting down";
      server->Stop();
    } else {
      std::_Exit(130);
    }
  }).detach();
}

LogLevel ParseLevel(const std::string &s) {
  if (s == "debug") return LogLevel::kDebug;
  if (s == "info") return LogLevel::kInfo;
  if (s == "warning") return LogLevel::kWarning;
  if (s == "error") return LogLevel::kError;
  throw ConfigError("unknown log level " + s);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"paramine: paraphrase mining pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "debug, info, warning or error")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}));

  std::string config_path;
  std::vector<std::string> overrides;
  std::vector<std::string> stage_names;
  for (const pipeline::StageDef &s : pipeline::Stages()) stage_names.push_back(s.name);
  stage_names.push_back("all");
  for (const std::string &name : stage_names) {
    CLI::App *sub = app.add_subcommand(name, name == "all" ? "run every pipeline stage in order"
                                                           : "run stage " + name);
    sub->add_option("--config", config_path, "pipeline config (JSON)")->required();
    sub->add_option("--set", overrides, "override a config key: a.b=value");
  }

  std::string mini_out;
  uint64_t mini_seed = 13;
  size_t mini_papers = 20;
  CLI::App *mini = app.add_subcommand("make-mini-corpus", "write the synthetic mini-corpus");
  mini->add_option("--out", mini_out, "output directory")->required();
  mini->add_option("--seed", mini_seed, "generator seed");
  mini->add_option("--papers", mini_papers, "number of papers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    MinLogLevel() = ParseLevel(log_level);
    CLI::App *sub = app.get_subcommands().front();
    if (sub == mini) {
      synth::WriteMiniCorpus(synth::MiniCorpusBuilder(mini_seed).Build(mini_papers), mini_out);
      PARAMINE_LOG(Info) << "mini-corpus written to " << mini_out;
      return 0;
    }
    const pipeline::PipelineConfig cfg = pipeline::LoadPipelineConfig(config_path, overrides);
    if (sub->get_name() == "serve-annotation") InstallServeSignalHandler();
    const auto outcomes = pipeline::RunPipeline(sub->get_name(), cfg);
    for (const auto &o : outcomes) {
      std::cout << o.stage << (o.skipped ? " up-to-date " : " done ") << o.counts.dump() << '\n';
    }
    return 0;
  } catch (const ConfigError &e) {
    PARAMINE_LOG(Error) << e.what();
    return 2;
  } catch (const std::exception &e) {
    PARAMINE_LOG(Error) << e.what();
    return 1;
  }
}
