/*
 * Copyright 2026 The qnoc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "qnoc/qnoc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigDeleter {
  void operator()(qnoc_config* c) const { qnoc_config_free(c); }
};
struct ReportDeleter {
  void operator()(qnoc_report* r) const { qnoc_report_free(r); }
};
using ConfigPtr = std::unique_ptr<qnoc_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<qnoc_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out = s == nullptr ? "" : s;
  qnoc_string_free(s);
  return out;
}

void complain(const std::string& what) {
  std::fprintf(stderr, "qnoc: %s\n", what.c_str());
}

// Options shared by run/validate/dump-config: where the config comes from and
// which overrides to apply on top of it.
struct SourceOptions {
  std::string preset;
  std::string config_file;
  std::vector<std::string> sets;
  std::string seed;
  std::string cycles;
  std::string warmup;
};

void add_source_options(CLI::App* cmd, SourceOptions* src, bool* all = nullptr) {
  auto* p = cmd->add_option("-p,--preset", src->preset,
                            "Start from a named preset (see list-presets)");
  auto* c = cmd->add_option("-c,--config", src->config_file,
                            "Start from a config file (key = value lines)");
  p->excludes(c);
  cmd->add_option("-s,--set", src->sets,
                  "Override one config key, e.g. --set seed=7 or "
                  "--set thread.VID.alloc_mbytes=300 (repeatable)");
  cmd->add_option("--seed", src->seed, "Override the global seed");
  cmd->add_option("--cycles", src->cycles, "Override measured cycles (sim_cycles)");
  cmd->add_option("--warmup", src->warmup, "Override warmup cycles");
  if (all != nullptr) {
    cmd->add_flag("-a,--all", *all, "Run every preset (requires --out)")
        ->excludes(p)
        ->excludes(c);
  }
}

// Builds the configuration from flags. Returns kExitOk and fills `out`, or an
// exit code with the diagnostic already printed.
int build_config(const SourceOptions& src, const std::string& preset_override,
                 ConfigPtr* out) {
  qnoc_config* raw = nullptr;
  const std::string preset = preset_override.empty() ? src.preset : preset_override;
  qnoc_status st;
  if (!preset.empty()) {
    st = qnoc_config_preset(preset.c_str(), &raw);
  } else if (!src.config_file.empty()) {
    st = qnoc_config_load(src.config_file.c_str(), &raw);
  } else {
    complain("one of --preset or --config is required");
    return kExitUsage;
  }
  if (st != QNOC_OK) {
    complain(qnoc_last_error());
    return kExitConfig;
  }
  ConfigPtr cfg(raw);

  for (const std::string& kv : src.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      complain("--set expects KEY=VALUE, got '" + kv + "'");
      return kExitUsage;
    }
    if (qnoc_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                        kv.substr(eq + 1).c_str()) != QNOC_OK) {
      complain(qnoc_last_error());
      return kExitConfig;
    }
  }
  const std::pair<const char*, const std::string*> flags[] = {
      {"seed", &src.seed}, {"sim_cycles", &src.cycles}, {"warmup_cycles", &src.warmup}};
  for (const auto& [key, value] : flags) {
    if (value->empty()) continue;
    if (qnoc_config_set(cfg.get(), key, value->c_str()) != QNOC_OK) {
      complain(qnoc_last_error());
      return kExitConfig;
    }
  }
  *out = std::move(cfg);
  return kExitOk;
}

int write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.flush();
  if (!f) {
    complain("cannot write " + path.string());
    return kExitRuntime;
  }
  return kExitOk;
}

// Runs one configuration; prints its summary and, when out_dir is set, writes
// summary.csv, windows.csv, and config.txt there.
int run_one(const qnoc_config* cfg, const std::string& out_dir) {
  if (qnoc_config_validate(cfg) != QNOC_OK) {
    complain(qnoc_last_error());
    return kExitConfig;
  }
  qnoc_report* raw = nullptr;
  if (qnoc_run(cfg, &raw) != QNOC_OK) {
    complain(qnoc_last_error());
    return kExitRuntime;
  }
  ReportPtr rep(raw);

  char* text = nullptr;
  qnoc_report_summary_text(rep.get(), &text);
  std::fputs(take_string(text).c_str(), stdout);

  if (out_dir.empty()) return kExitOk;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    complain("cannot create " + out_dir + ": " + ec.message());
    return kExitRuntime;
  }
  char* s = nullptr;
  qnoc_report_summary_csv(rep.get(), &s);
  if (int rc = write_file(std::filesystem::path(out_dir) / "summary.csv",
                          take_string(s)))
    return rc;
  qnoc_report_windows_csv(rep.get(), &s);
  if (int rc = write_file(std::filesystem::path(out_dir) / "windows.csv",
                          take_string(s)))
    return rc;
  qnoc_config_text(cfg, &s);
  if (int rc = write_file(std::filesystem::path(out_dir) / "config.txt",
                          take_string(s)))
    return rc;
  std::printf("wrote %s\n", out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnoc — shared-target interconnect simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qnoc_version()));

  SourceOptions run_src;
  bool run_all = false;
  std::string out_dir;
  CLI::App* run = app.add_subcommand("run", "Simulate a scenario and report");
  add_source_options(run, &run_src, &run_all);
  run->add_option("-o,--out", out_dir,
                  "Directory for summary.csv, windows.csv, config.txt "
                  "(per-preset subdirectories with --all)");

  SourceOptions val_src;
  CLI::App* val = app.add_subcommand("validate", "Check a config without running");
  add_source_options(val, &val_src);

  SourceOptions dump_src;
  CLI::App* dump = app.add_subcommand(
      "dump-config", "Print the fully resolved config as key = value text");
  add_source_options(dump, &dump_src);

  CLI::App* list = app.add_subcommand("list-presets", "List canned scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (list->parsed()) {
    for (int i = 0; i < qnoc_preset_count(); ++i)
      std::printf("%-14s %s\n", qnoc_preset_name(i), qnoc_preset_description(i));
    return kExitOk;
  }

  if (val->parsed()) {
    ConfigPtr cfg;
    if (int rc = build_config(val_src, "", &cfg)) return rc;
    if (qnoc_config_validate(cfg.get()) != QNOC_OK) {
      complain(qnoc_last_error());
      return kExitConfig;
    }
    std::printf("ok\n");
    return kExitOk;
  }

  if (dump->parsed()) {
    ConfigPtr cfg;
    if (int rc = build_config(dump_src, "", &cfg)) return rc;
    char* text = nullptr;
    if (qnoc_config_text(cfg.get(), &text) != QNOC_OK) {
      complain(qnoc_last_error());
      return kExitRuntime;
    }
    std::fputs(take_string(text).c_str(), stdout);
    return kExitOk;
  }

  // run
  if (run_all) {
    if (out_dir.empty()) {
      complain("--all needs --out DIR for the per-preset reports");
      return kExitUsage;
    }
    for (int i = 0; i < qnoc_preset_count(); ++i) {
      const std::string name = qnoc_preset_name(i);
      ConfigPtr cfg;
      if (int rc = build_config(run_src, name, &cfg)) return rc;
      const std::string dir =
          (std::filesystem::path(out_dir) / name).string();
      if (int rc = run_one(cfg.get(), dir)) return rc;
    }
    return kExitOk;
  }
  ConfigPtr cfg;
  if (int rc = build_config(run_src, "", &cfg)) return rc;
  return run_one(cfg.get(), out_dir);
}
