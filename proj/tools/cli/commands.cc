// Copyright 2026 The TabAttack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "errors.h"
#include "tabattack/attack.h"
#include "tabattack/corpus_io.h"
#include "tabattack/entity_kb.h"
#include "tabattack/fixtures.h"
#include "tabattack/leakage.h"
#include "tabattack/manifest.h"
#include "tabattack/prototype_victim.h"
#include "tabattack/report.h"
#include "tabattack/sweep.h"
#include "tabattack/version.h"
#include "victim_spec.h"

namespace tabattack::cli {
namespace {

namespace fs = std::filesystem;

struct OutputFile {
  std::string name;
  std::string content;
};

// Files are only written once a command has fully succeeded, manifest last.
void CommitOutputs(const fs::path& dir, const std::vector<OutputFile>& files,
                   const RunManifest& manifest, std::ostream& out) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create " + dir.string() + ": " + ec.message());
  for (const OutputFile& f : files) {
    const fs::path path = dir / f.name;
    std::ofstream o(path, std::ios::binary);
    o << f.content;
    if (!o) throw InputError("cannot write " + path.string());
    out << "wrote " << path.generic_string() << '\n';
  }
  WriteManifest(manifest, dir / "manifest.json");
  out << "wrote " << (dir / "manifest.json").generic_string() << '\n';
}

RunManifest NewManifest(const std::string& command,
                        const std::vector<std::string>& args) {
  RunManifest m;
  m.command = command;
  m.args = ManifestArgs(args);
  m.args.erase(m.args.begin());  // the subcommand itself
  m.tool_version = TABATTACK_VERSION;
  m.timestamp = CurrentTimestamp();
  return m;
}

void AddInput(RunManifest& m, const std::string& role,
              const std::string& path) {
  m.inputs.push_back({role, path, Sha256File(path)});
}

template <typename Fn>
std::string Render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

std::vector<uint64_t> SeedRange(uint64_t seed, int count) {
  std::vector<uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(seed + i);
  return seeds;
}

// Every annotation label must be known to the victim.
void CheckVocabulary(const Corpus& corpus, const Victim& victim) {
  const std::set<std::string> known(victim.vocabulary().begin(),
                                    victim.vocabulary().end());
  std::set<std::string> missing;
  for (const Table& t : corpus.tables()) {
    for (const auto& [col, classes] : t.annotations()) {
      for (const std::string& c : classes) {
        if (!known.contains(c)) missing.insert(c);
      }
    }
  }
  if (missing.empty()) return;
  std::string list;
  for (const std::string& c : missing) {
    if (!list.empty()) list += ", ";
    list += c;
  }
  throw InputError("victim does not know class(es): " + list);
}

std::vector<OutputFile> ReportFilesFor(const std::vector<MetricsRow>& rows) {
  return {
      {"sweep.csv", Render([&](std::ostream& o) { WriteSweepCsv(rows, o); })},
      {"table.csv",
       Render([&](std::ostream& o) { WriteResultsTableCsv(rows, o); })},
      {"series.csv", Render([&](std::ostream& o) { WriteSeriesCsv(rows, o); })},
      {"per_class.csv",
       Render([&](std::ostream& o) { WritePerClassCsv(rows, o); })},
  };
}

// ---------------------------------------------------------------------------
// Subcommands. Each registers its flags and returns the action to run.

using Action = std::function<void(std::ostream& out, std::ostream& err)>;

struct VictimFlags {
  std::string spec;
  std::optional<double> threshold;
  int timeout_ms = 30000;

  void Register(CLI::App* app) {
    app->add_option("--victim", spec,
                    "prototype:<model.json> or http:<http://host:port>")
        ->required();
    app->add_option("--threshold", threshold,
                    "Override the victim's decision threshold");
    app->add_option("--timeout-ms", timeout_ms, "Per-request timeout (http)")
        ->check(CLI::PositiveNumber);
  }

  OpenedVictim Open() const {
    VictimOpenOptions o;
    o.threshold = threshold;
    o.timeout = std::chrono::milliseconds(timeout_ms);
    return OpenVictim(spec, o);
  }
};

struct AuditLeakageCmd {
  std::string train, test, mode = "unique", out_dir;

  void Register(CLI::App* app) {
    app->add_option("--train", train, "Train corpus (JSONL)")->required();
    app->add_option("--test", test, "Test corpus (JSONL)")->required();
    app->add_option("--mode", mode, "Count unique entities or mentions")
        ->check(CLI::IsMember({"unique", "mention"}));
    app->add_option("--out", out_dir, "Output directory")->required();
  }

  void Run(const std::vector<std::string>& args, std::ostream& out) const {
    RunManifest m = NewManifest("audit-leakage", args);
    AddInput(m, "train", train);
    AddInput(m, "test", test);
    m.config = {{"mode", mode}};

    const Corpus train_c = ParseCorpusFile(train, Split::kTrain);
    const Corpus test_c = ParseCorpusFile(test, Split::kTest);
    if (test_c.empty()) throw InputError("test corpus " + test + " is empty");
    const LeakageReport report =
        ComputeLeakage(train_c, test_c, ParseCountMode(mode));
    CommitOutputs(out_dir, {{"leakage.csv", Render([&](std::ostream& o) {
                               WriteLeakageCsv(report, o);
                             })}},
                  m, out);
  }
};

struct BuildVictimCmd {
  std::string train, embeddings, out_dir, missing = "skip";
  double header_weight = 0.3;
  std::optional<double> threshold;

  void Register(CLI::App* app) {
    app->add_option("--train", train, "Train corpus (JSONL)")->required();
    app->add_option("--embeddings", embeddings, "Embedding file")->required();
    app->add_option("--header-weight", header_weight)
        ->check(CLI::Range(0.0, 0.999999));
    app->add_option("--threshold", threshold,
                    "Decision threshold; calibrated on --train when absent");
    app->add_option("--missing", missing, "Policy for tokens without embedding")
        ->check(CLI::IsMember({"skip", "fail"}));
    app->add_option("--out", out_dir, "Output directory")->required();
  }

  void Run(const std::vector<std::string>& args, std::ostream& out) const {
    RunManifest m = NewManifest("build-victim", args);
    AddInput(m, "train", train);
    AddInput(m, "embeddings", embeddings);

    const Corpus train_c = ParseCorpusFile(train, Split::kTrain);
    auto store =
        std::make_shared<const EmbeddingStore>(LoadEmbeddingsFile(embeddings));
    PrototypeVictimOptions options;
    options.header_weight = header_weight;
    options.missing =
        missing == "fail" ? MissingEmbedding::kFail : MissingEmbedding::kSkip;
    double train_f1 = -1.0;
    options.threshold =
        threshold
            ? *threshold
            : CalibrateThreshold(train_c, *store, header_weight, &train_f1);
    const PrototypeVictim victim =
        BuildPrototypeVictim(train_c, store, options);
    m.config = {{"header_weight", header_weight},
                {"threshold", options.threshold},
                {"calibrated", !threshold.has_value()},
                {"missing_embedding", missing},
                {"classes", victim.vocabulary().size()}};
    if (!threshold) m.config["train_f1"] = train_f1;

    // The model refers to the embedding file, so it is written in place.
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw InputError("cannot create " + out_dir + ": " + ec.message());
    const fs::path model = fs::path(out_dir) / "victim.json";
    SavePrototypeModel(victim, model, embeddings);
    out << "wrote " << model.generic_string() << '\n';
    CommitOutputs(out_dir, {}, m, out);
  }
};

struct GenFixturesCmd {
  FixtureSpec spec;
  std::string spec_file, out_dir;
  // Flags that override a --spec file when given explicitly.
  std::vector<std::pair<CLI::Option*,
                        std::function<void(FixtureSpec&, const FixtureSpec&)>>>
      overrides;

  template <typename T>
  void Flag(CLI::App* app, const std::string& name, T FixtureSpec::* field,
            const std::string& help) {
    CLI::Option* opt = app->add_option(name, spec.*field, help);
    overrides.emplace_back(opt,
                           [field](FixtureSpec& dst, const FixtureSpec& src) {
                             dst.*field = src.*field;
                           });
  }

  void Register(CLI::App* app) {
    app->add_option("--spec", spec_file, "Fixture spec JSON (flags override)");
    app->add_option("--out", out_dir, "Output directory")->required();
    Flag(app, "--n-classes", &FixtureSpec::n_classes, "Number of classes");
    Flag(app, "--entities-per-class", &FixtureSpec::entities_per_class,
         "Unique test entities per class");
    Flag(app, "--train-only-per-class", &FixtureSpec::train_only_per_class,
         "Head entities seen only in train");
    Flag(app, "--train-columns", &FixtureSpec::train_columns, "");
    Flag(app, "--test-columns", &FixtureSpec::test_columns, "");
    Flag(app, "--columns-per-table", &FixtureSpec::columns_per_table, "");
    Flag(app, "--rows-per-column", &FixtureSpec::rows_per_column, "");
    Flag(app, "--overlap-fractions", &FixtureSpec::overlap_fractions,
         "Train/test overlap per class, cycled");
    app->get_option("--overlap-fractions")->delimiter(',');
    Flag(app, "--fully-overlapped-classes",
         &FixtureSpec::fully_overlapped_classes, "");
    Flag(app, "--tail-fraction", &FixtureSpec::tail_fraction,
         "Share of test entities drawn from the tail mode");
    Flag(app, "--tail-alignment", &FixtureSpec::tail_alignment, "");
    Flag(app, "--tail-alignment-spread", &FixtureSpec::tail_alignment_spread,
         "");
    Flag(app, "--dimension", &FixtureSpec::dimension, "Embedding dimension");
    Flag(app, "--sigma", &FixtureSpec::sigma, "Entity noise");
    Flag(app, "--header-noise", &FixtureSpec::header_noise, "");
    Flag(app, "--synonym-alignment", &FixtureSpec::synonym_alignment, "");
    Flag(app, "--synonym-noise", &FixtureSpec::synonym_noise, "");
    Flag(app, "--distractor-words", &FixtureSpec::distractor_words, "");
    Flag(app, "--header-weight", &FixtureSpec::header_weight,
         "Header weight used for calibration");
    Flag(app, "--seed", &FixtureSpec::seed, "Generator seed");
  }

  void Run(const std::vector<std::string>& args, std::ostream& out) const {
    RunManifest m = NewManifest("gen-fixtures", args);
    FixtureSpec resolved = spec;
    if (!spec_file.empty()) {
      AddInput(m, "spec", spec_file);
      std::ifstream in(spec_file);
      try {
        resolved = FixtureSpecFromJson(nlohmann::json::parse(in));
      } catch (const std::exception& e) {
        throw InputError(spec_file + ": " + e.what());
      }
      for (const auto& [opt, copy] : overrides) {
        if (opt->count() > 0) copy(resolved, spec);
      }
    }
    try {
      resolved.Validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    m.config = FixtureSpecToJson(resolved);
    m.seed = resolved.seed;

    const FixtureData data = GenerateFixture(resolved);
    const FixtureFiles files = WriteFixture(data, out_dir);
    for (const fs::path& p : {files.train, files.test, files.embeddings,
                              files.synonyms, files.metadata}) {
      out << "wrote " << p.generic_string() << '\n';
    }
    out << "threshold " << data.threshold << ", baseline test F1 "
        << data.baseline_test_f1 << '\n';
    CommitOutputs(out_dir, {}, m, out);
  }
};

struct AttackCmd {
  std::string corpus, train, embeddings, out_dir;
  VictimFlags victim;
  std::vector<int> ps{20, 40, 60, 80, 100};
  std::vector<std::string> selections{"importance"};
  std::vector<std::string> samplings{"similarity"};
  std::vector<std::string> pools{"filtered"};
  uint64_t seed = 0;
  int num_seeds = 1;
  bool allow_duplicates = false;
  bool attack_all = false;
  int threads = 0;

  void Register(CLI::App* app) {
    app->add_option("--corpus", corpus, "Test corpus (JSONL)")->required();
    app->add_option("--train", train,
                    "Train corpus; required for the filtered pool");
    app->add_option("--embeddings", embeddings,
                    "Entity embeddings for the candidate pools")
        ->required();
    victim.Register(app);
    app->add_option("--p", ps, "Perturbation percentages")
        ->delimiter(',')
        ->check(CLI::Range(1, 100));
    app->add_option("--selection", selections)
        ->delimiter(',')
        ->check(CLI::IsMember({"importance", "random"}));
    app->add_option("--sampling", samplings)
        ->delimiter(',')
        ->check(CLI::IsMember({"similarity", "random"}));
    app->add_option("--pool", pools)
        ->delimiter(',')
        ->check(CLI::IsMember({"test", "filtered"}));
    app->add_option("--seed", seed, "Base seed");
    app->add_option("--num-seeds", num_seeds, "Seeds seed, seed+1, ...")
        ->check(CLI::PositiveNumber);
    app->add_flag("--allow-duplicates", allow_duplicates,
                  "Reuse a replacement within a column");
    app->add_flag("--attack-all", attack_all,
                  "Also attack columns the victim already gets wrong");
    app->add_option("--threads", threads, "0 = default")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--out", out_dir, "Output directory")->required();
  }

  SweepSpec Spec() const {
    SweepSpec s;
    s.ps = ps;
    s.selections.clear();
    for (const auto& x : selections) s.selections.push_back(ParseSelection(x));
    s.samplings.clear();
    for (const auto& x : samplings) s.samplings.push_back(ParseSampling(x));
    s.pools.clear();
    for (const auto& x : pools) s.pools.push_back(ParsePool(x));
    s.seeds = SeedRange(seed, num_seeds);
    s.allow_duplicates = allow_duplicates;
    s.attack_correct_only = !attack_all;
    if (threads > 0) s.threads = threads;
    return s;
  }

  void Run(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) const {
    const SweepSpec spec = Spec();
    const bool needs_train = std::find(spec.pools.begin(), spec.pools.end(),
                                       PoolKind::kFiltered) != spec.pools.end();
    if (needs_train && train.empty()) {
      throw UsageError("--pool filtered needs --train");
    }

    RunManifest m = NewManifest("attack", args);
    AddInput(m, "corpus", corpus);
    if (!train.empty()) AddInput(m, "train", train);
    AddInput(m, "embeddings", embeddings);
    m.seed = seed;

    const OpenedVictim opened = victim.Open();
    for (const InputDigest& d : opened.inputs) m.inputs.push_back(d);

    const Corpus test_c = ParseCorpusFile(corpus, Split::kTest);
    if (test_c.empty()) throw InputError("corpus " + corpus + " is empty");
    CheckVocabulary(test_c, *opened.victim);
    auto store =
        std::make_shared<const EmbeddingStore>(LoadEmbeddingsFile(embeddings));
    auto test_kb = std::make_shared<const EntityKB>(BuildKb(test_c, *store));
    std::shared_ptr<const EntityKB> train_kb;
    if (!train.empty()) {
      train_kb = std::make_shared<const EntityKB>(
          BuildKb(ParseCorpusFile(train, Split::kTrain), *store));
    }
    const CandidatePools candidates(test_kb, train_kb, store);

    m.config = {{"p", spec.ps},
                {"selection", selections},
                {"sampling", samplings},
                {"pool", pools},
                {"seeds", spec.seeds},
                {"allow_duplicates", spec.allow_duplicates},
                {"attack_correct_only", spec.attack_correct_only},
                {"victim", opened.description}};

    std::ostringstream results;
    int64_t audited = 0, audit_failures = 0;
    const auto rows = RunSweep(
        spec, test_c, *opened.victim, candidates, [&](const AttackResult& r) {
          results << AttackResultToJson(r).dump() << '\n';
          ++audited;
          if (!ImperceptibilityAudit(r, *test_kb).passed) ++audit_failures;
        });
    if (audit_failures > 0) {
      err << "warning: " << audit_failures << " of " << audited
          << " attack results failed the imperceptibility audit\n";
    }
    std::vector<OutputFile> files = ReportFilesFor(rows);
    files.push_back({"results.jsonl", results.str()});
    CommitOutputs(out_dir, files, m, out);
    WriteResultsTableCsv(rows, out);
  }
};

struct HeaderAttackCmd {
  std::string corpus, synonyms, out_dir;
  VictimFlags victim;
  std::vector<int> ps{20, 40, 60, 80, 100};
  uint64_t seed = 0;
  int num_seeds = 1;
  int threads = 0;

  void Register(CLI::App* app) {
    app->add_option("--corpus", corpus, "Test corpus (JSONL)")->required();
    app->add_option("--synonyms", synonyms, "Synonym embedding file")
        ->required();
    victim.Register(app);
    app->add_option("--p", ps, "Perturbation percentages")
        ->delimiter(',')
        ->check(CLI::Range(1, 100));
    app->add_option("--seed", seed, "Base seed");
    app->add_option("--num-seeds", num_seeds)->check(CLI::PositiveNumber);
    app->add_option("--threads", threads, "0 = default")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--out", out_dir, "Output directory")->required();
  }

  void Run(const std::vector<std::string>& args, std::ostream& out) const {
    RunManifest m = NewManifest("header-attack", args);
    AddInput(m, "corpus", corpus);
    AddInput(m, "synonyms", synonyms);
    m.seed = seed;

    const OpenedVictim opened = victim.Open();
    for (const InputDigest& d : opened.inputs) m.inputs.push_back(d);

    const Corpus test_c = ParseCorpusFile(corpus, Split::kTest);
    if (test_c.empty()) throw InputError("corpus " + corpus + " is empty");
    CheckVocabulary(test_c, *opened.victim);
    const EmbeddingStore store = LoadEmbeddingsFile(synonyms);

    HeaderSweepSpec spec;
    spec.ps = ps;
    spec.seeds = SeedRange(seed, num_seeds);
    if (threads > 0) spec.threads = threads;
    m.config = {
        {"p", spec.ps}, {"seeds", spec.seeds}, {"victim", opened.description}};

    std::ostringstream results;
    const auto rows = RunHeaderSweep(
        spec, test_c, *opened.victim, store, [&](const HeaderAttackRecord& r) {
          nlohmann::json swaps = nlohmann::json::array();
          for (const HeaderSwap& s : r.result.swaps) {
            swaps.push_back({{"col", s.col},
                             {"before", s.original},
                             {"after", s.replacement}});
          }
          results << nlohmann::json{{"table_id", r.table_id},
                                    {"p", r.p},
                                    {"seed", r.seed},
                                    {"swaps", std::move(swaps)},
                                    {"selected", r.result.selected},
                                    {"skips", r.result.skips}}
                         .dump()
                  << '\n';
        });
    std::vector<OutputFile> files = ReportFilesFor(rows);
    files.push_back({"results.jsonl", results.str()});
    CommitOutputs(out_dir, files, m, out);
    WriteResultsTableCsv(rows, out);
  }
};

struct ReplayCmd {
  std::string manifest, out_dir;

  void Register(CLI::App* app) {
    app->add_option("manifest", manifest, "manifest.json of an earlier run")
        ->required();
    app->add_option("--out", out_dir, "Output directory")->required();
  }

  int Run(std::ostream& out, std::ostream& err) const {
    const RunManifest m = ReadManifest(manifest);
    const auto changed = ChangedInputs(m);
    if (!changed.empty()) {
      std::string list;
      for (const InputDigest& d : changed) list += " " + d.path;
      throw InputError("inputs changed since the recorded run:" + list);
    }
    if (m.tool_version != TABATTACK_VERSION) {
      err << "warning: recorded with tabattack " << m.tool_version
          << ", replaying with " << TABATTACK_VERSION << '\n';
    }
    if (m.command == "replay") throw InputError("cannot replay a replay");
    std::vector<std::string> args{m.command};
    args.insert(args.end(), m.args.begin(), m.args.end());
    args.push_back("--out");
    args.push_back(out_dir);
    return RunCli(args, out, err);
  }
};

}  // namespace

std::vector<std::string> ManifestArgs(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Entity-swap adversarial attacks on column type annotation",
               "tabattack"};
  app.set_version_flag("--version", TABATTACK_VERSION);
  app.require_subcommand(1);

  AuditLeakageCmd audit;
  audit.Register(app.add_subcommand("audit-leakage",
                                    "Per-class train/test entity overlap"));
  BuildVictimCmd build;
  build.Register(app.add_subcommand("build-victim",
                                    "Train the prototype victim on a corpus"));
  GenFixturesCmd gen;
  gen.Register(app.add_subcommand(
      "gen-fixtures", "Generate a synthetic corpus with embeddings"));
  AttackCmd attack;
  attack.Register(app.add_subcommand(
      "attack", "Entity-swap attack sweep against a victim"));
  HeaderAttackCmd header;
  header.Register(app.add_subcommand(
      "header-attack", "Header synonym attack sweep against a victim"));
  ReplayCmd replay;
  replay.Register(
      app.add_subcommand("replay", "Re-run a command from its manifest"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "audit-leakage")
      audit.Run(args, out);
    else if (cmd == "build-victim")
      build.Run(args, out);
    else if (cmd == "gen-fixtures")
      gen.Run(args, out);
    else if (cmd == "attack")
      attack.Run(args, out, err);
    else if (cmd == "header-attack")
      header.Run(args, out);
    else if (cmd == "replay")
      return replay.Run(out, err);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TransportError& e) {
    err << "victim transport error: " << e.what() << '\n';
    return kExitTransport;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace tabattack::cli
