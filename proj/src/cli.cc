// Copyright 2026 The CodeVet Authors
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

#include "codevet/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "codevet/chat_backend.h"
#include "codevet/compiler.h"
#include "codevet/corpus.h"
#include "codevet/fixers.h"
#include "codevet/forge.h"
#include "codevet/inject.h"
#include "codevet/langid.h"
#include "codevet/metrics.h"
#include "codevet/repair.h"
#include "codevet/serialize.h"
#include "codevet/subprocess.h"
#include "codevet/worker_pool.h"

namespace codevet {

namespace {

namespace fs = std::filesystem;

// Bad flags, settings or environment: exit 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Settings: flags > environment > config file > defaults.

class Settings {
 public:
  Settings(Json file, std::string section)
      : file_(std::move(file)), section_(std::move(section)) {}

  std::string Str(const std::string& key, const CLI::Option* flag,
                  const std::string& flag_value, const char* env,
                  const std::string& fallback) {
    std::string value = fallback;
    if (flag != nullptr && flag->count() > 0) {
      value = flag_value;
    } else if (const char* v = env != nullptr ? std::getenv(env) : nullptr;
               v != nullptr && *v != '\0') {
      value = v;
    } else if (auto from_file = FromFile(key)) {
      value = *from_file;
    }
    effective_[key] = value;
    return value;
  }

  long long Int(const std::string& key, const CLI::Option* flag,
                const std::string& flag_value, const char* env, long long fallback) {
    const std::string text = Str(key, flag, flag_value, env, std::to_string(fallback));
    try {
      std::size_t used = 0;
      const long long value = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      effective_[key] = value;
      return value;
    } catch (const std::exception&) {
      throw ConfigError("setting '" + key + "' must be an integer, got '" + text + "'");
    }
  }

  std::uint64_t UInt64(const std::string& key, const CLI::Option* flag,
                       const std::string& flag_value, const char* env,
                       std::uint64_t fallback) {
    const std::string text = Str(key, flag, flag_value, env, std::to_string(fallback));
    try {
      std::size_t used = 0;
      if (!text.empty() && text.front() == '-') throw std::invalid_argument(text);
      const std::uint64_t value = std::stoull(text, &used, 0);
      if (used != text.size()) throw std::invalid_argument(text);
      effective_[key] = value;
      return value;
    } catch (const std::exception&) {
      throw ConfigError("setting '" + key + "' must be a non-negative integer, got '" +
                        text + "'");
    }
  }

  double Real(const std::string& key, const CLI::Option* flag,
              const std::string& flag_value, const char* env, double fallback) {
    std::ostringstream def;
    def << fallback;
    const std::string text = Str(key, flag, flag_value, env, def.str());
    try {
      std::size_t used = 0;
      const double value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      effective_[key] = value;
      return value;
    } catch (const std::exception&) {
      throw ConfigError("setting '" + key + "' must be a number, got '" + text + "'");
    }
  }

  const Json& effective() const { return effective_; }
  const std::string& section() const { return section_; }

 private:
  std::optional<std::string> FromFile(const std::string& key) const {
    for (const std::string& part : {section_, std::string("global")}) {
      if (!file_.is_object() || !file_.contains(part)) continue;
      const Json& sec = file_.at(part);
      if (!sec.is_object() || !sec.contains(key)) continue;
      const Json& v = sec.at(key);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      if (v.is_number()) {
        std::ostringstream s;
        s << v.get<double>();
        return s.str();
      }
      if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
          if (!joined.empty()) joined += ",";
          joined += item.is_string() ? item.get<std::string>() : item.dump();
        }
        return joined;
      }
      throw ConfigError("config setting '" + part + "." + key + "' has an unsupported type");
    }
    return std::nullopt;
  }

  Json file_;
  std::string section_;
  Json effective_ = Json::object();
};

Json LoadConfigFile(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    Json doc = Json::parse(in);
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    return doc;
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
  }
}

// ---------------------------------------------------------------------------
// Output helpers

class Logger {
 public:
  Logger(std::ostream& err, std::string subcommand)
      : err_(err), subcommand_(std::move(subcommand)) {}

  void Event(const std::string& stage, Json fields = Json::object()) {
    Json event;
    event["event"] = "stage";
    event["subcommand"] = subcommand_;
    event["stage"] = stage;
    for (auto it = fields.begin(); it != fields.end(); ++it) event[it.key()] = it.value();
    err_ << event.dump() << "\n";
  }

  void Summary(const std::string& text) { err_ << text << "\n"; }

 private:
  std::ostream& err_;
  std::string subcommand_;
};

void WriteFile(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoFailure("write failed: " + path.string());
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string JsonLines(const std::vector<Json>& items) {
  std::string out;
  for (const auto& item : items) {
    out += item.dump();
    out += "\n";
  }
  return out;
}

std::vector<Json> ReadJsonLines(const fs::path& path) {
  std::vector<Json> items;
  std::istringstream in(ReadFile(path));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      items.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw ConfigError(path.string() + ":" + std::to_string(number) +
                        ": not JSON: " + e.what());
    }
  }
  return items;
}

// JSON documents from a directory of *.json files (sorted by name), or a
// JSON-lines file.
std::vector<Json> ReadDocuments(const fs::path& from) {
  if (fs::is_directory(from)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(from)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Json> docs;
    for (const auto& f : files) {
      try {
        docs.push_back(Json::parse(ReadFile(f)));
      } catch (const Json::parse_error& e) {
        throw ConfigError(f.string() + ": not JSON: " + e.what());
      }
    }
    return docs;
  }
  if (!fs::exists(from)) throw ConfigError("input not found: " + from.string());
  return ReadJsonLines(from);
}

std::string SafeFileStem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                    c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.size() > 80) out.resize(80);
  return out;
}

// ---------------------------------------------------------------------------
// Shared options

struct CommonFlags {
  std::string cc, std_c, std_cpp, jobs, timeout, lang, threshold;
  CLI::Option* cc_opt = nullptr;
  CLI::Option* std_c_opt = nullptr;
  CLI::Option* std_cpp_opt = nullptr;
  CLI::Option* jobs_opt = nullptr;
  CLI::Option* timeout_opt = nullptr;
  CLI::Option* lang_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
};

void AddCompilerFlags(CLI::App* sub, CommonFlags& f) {
  f.cc_opt = sub->add_option("--cc", f.cc, "Compiler command (default gcc)");
  f.std_c_opt = sub->add_option("--std-c", f.std_c, "C standard (default gnu11)");
  f.std_cpp_opt =
      sub->add_option("--std-cpp", f.std_cpp, "C++ standard (default gnu++14)");
  f.timeout_opt =
      sub->add_option("--timeout", f.timeout, "Per-compile timeout in seconds");
}

void AddJobs(CLI::App* sub, CommonFlags& f) {
  f.jobs_opt = sub->add_option("--jobs", f.jobs, "Parallel workers");
}

void AddLang(CLI::App* sub, CommonFlags& f) {
  f.lang_opt = sub->add_option("--lang", f.lang,
                               "c, cpp, or auto (classifier when confident)");
  f.threshold_opt = sub->add_option(
      "--threshold", f.threshold, "Classifier confidence needed to override a label");
}

CompilerConfig MakeCompiler(Settings& s, CommonFlags& f) {
  const std::string cc =
      s.Str("cc", f.cc_opt, f.cc, "CODEVET_CC", std::string(CompilerConfig::kDefaultCommand));
  const std::string std_c =
      s.Str("std_c", f.std_c_opt, f.std_c, nullptr, std::string(CompilerConfig::kDefaultStdC));
  const std::string std_cpp = s.Str("std_cpp", f.std_cpp_opt, f.std_cpp, nullptr,
                                    std::string(CompilerConfig::kDefaultStdCpp));
  const double timeout = s.Real("timeout", f.timeout_opt, f.timeout, "CODEVET_TIMEOUT",
                                CompilerConfig::kDefaultTimeoutSeconds);
  try {
    return CompilerConfig(cc, std_c, std_cpp, {}, std::chrono::duration<double>(timeout));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::size_t Jobs(Settings& s, CommonFlags& f) {
  const long long jobs = s.Int("jobs", f.jobs_opt, f.jobs, "CODEVET_JOBS",
                               static_cast<long long>(DefaultJobs()));
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  return static_cast<std::size_t>(jobs);
}

struct LangMode {
  std::string mode;  // c, cpp, auto
  double threshold = kDefaultMislabelThreshold;
};

LangMode ReadLangMode(Settings& s, CommonFlags& f) {
  LangMode m;
  m.mode = s.Str("lang", f.lang_opt, f.lang, nullptr, "auto");
  if (m.mode != "c" && m.mode != "cpp" && m.mode != "auto") {
    throw ConfigError("--lang must be c, cpp or auto, got '" + m.mode + "'");
  }
  m.threshold = s.Real("threshold", f.threshold_opt, f.threshold, nullptr,
                       kDefaultMislabelThreshold);
  if (!(m.threshold >= 0.0 && m.threshold <= 1.0)) {
    throw ConfigError("threshold must be in [0, 1]");
  }
  return m;
}

std::optional<LangLabel> ResolveLang(const CodeSnippet& snippet, const LangMode& m) {
  if (m.mode == "c") return LangLabel::kC;
  if (m.mode == "cpp") return LangLabel::kCpp;
  LangLabel lang = snippet.claimed_lang;
  const LangScore score = Classify(snippet);
  if (score.predicted != LangLabel::kUnknown &&
      (lang == LangLabel::kUnknown || score.confidence >= m.threshold)) {
    lang = score.predicted;
  }
  if (!IsCFamilyCompilable(lang)) return std::nullopt;
  return lang;
}

LoadResult LoadInput(const std::string& path) {
  try {
    return LoadCorpus(path);
  } catch (const FileNotFoundError& e) {
    throw ConfigError(e.what());
  }
}

void ReportRejects(Logger& log, const LoadResult& loaded) {
  for (const auto& r : loaded.rejects) {
    log.Event("reject", Json{{"line", r.line_number},
                             {"kind", std::string(RejectKindName(r.kind))},
                             {"reason", r.reason}});
  }
}

Json RejectsJson(const RejectedLine& r) {
  return Json{{"line", r.line_number},
              {"kind", std::string(RejectKindName(r.kind))},
              {"reason", r.reason},
              {"id", r.id},
              {"text", r.text}};
}

std::unique_ptr<ChatBackend> MakeBackend(Settings& s, const CLI::Option* url_opt,
                                         const std::string& url_flag,
                                         const CLI::Option* name_opt,
                                         const std::string& name_flag,
                                         const CLI::Option* replay_opt,
                                         const std::string& replay_flag) {
  const std::string replay = s.Str("replay", replay_opt, replay_flag, nullptr, "");
  if (!replay.empty()) {
    try {
      return std::make_unique<ReplayBackend>(ReplayBackend::FromFile(replay));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  HttpBackendOptions options = HttpBackendOptions::FromEnvironment();
  options.url = s.Str("model_url", url_opt, url_flag, "CODEVET_MODEL_URL", options.url);
  options.model =
      s.Str("model_name", name_opt, name_flag, "CODEVET_MODEL_NAME", options.model);
  if (options.url.empty()) {
    throw ConfigError("model backend needs --model-url, CODEVET_MODEL_URL or --replay");
  }
  try {
    return std::make_unique<HttpChatBackend>(options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<int> ParseKs(const std::string& text) {
  std::vector<int> ks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ks.push_back(k);
    } catch (const std::exception&) {
      throw ConfigError("bad K list '" + text + "'");
    }
  }
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1])) {
      throw ConfigError("K values must be positive and strictly increasing");
    }
  }
  if (ks.empty()) throw ConfigError("empty K list");
  return ks;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"codevet: compilability analysis, repair and broken-code datasets"};
  app.name("codevet");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON settings file with per-subcommand sections");

  // ingest
  CLI::App* ingest = app.add_subcommand("ingest", "Validate and length-filter a corpus");
  std::string ingest_path, ingest_out, ingest_rejects, ingest_max;
  ingest->add_option("corpus", ingest_path, "Corpus file (JSON lines)")->required();
  CLI::Option* ingest_max_opt =
      ingest->add_option("--max-tokens", ingest_max, "Token limit (default 4096)");
  ingest->add_option("--out", ingest_out, "Where to write kept snippets");
  ingest->add_option("--rejects", ingest_rejects, "Where to write rejected lines");

  // check
  CLI::App* check = app.add_subcommand("check", "Compile every snippet");
  std::string check_path, check_report, check_outcomes;
  CommonFlags check_flags;
  check->add_option("corpus", check_path, "Corpus file")->required();
  AddCompilerFlags(check, check_flags);
  AddJobs(check, check_flags);
  AddLang(check, check_flags);
  check->add_option("--report", check_report, "Compilability report (JSON)");
  check->add_option("--outcomes", check_outcomes, "Per-snippet outcomes (JSON lines)");

  // classify
  CLI::App* classify = app.add_subcommand("classify", "Identify snippet languages");
  std::string classify_path, classify_report, classify_backend, classify_threshold,
      classify_predictions, classify_url, classify_model, classify_replay;
  classify->add_option("corpus", classify_path, "Corpus file")->required();
  CLI::Option* classify_backend_opt =
      classify->add_option("--backend", classify_backend, "rules, model or both");
  CLI::Option* classify_threshold_opt =
      classify->add_option("--threshold", classify_threshold, "Mislabel confidence");
  classify->add_option("--report", classify_report, "Report (JSON)");
  classify->add_option("--predictions", classify_predictions,
                       "Per-snippet predictions (JSON lines)");
  CLI::Option* classify_url_opt =
      classify->add_option("--model-url", classify_url, "Chat endpoint (http://)");
  CLI::Option* classify_model_opt =
      classify->add_option("--model-name", classify_model, "Model name");
  CLI::Option* classify_replay_opt =
      classify->add_option("--replay", classify_replay, "Recorded replies (JSON lines)");

  // repair
  CLI::App* repair = app.add_subcommand("repair", "Compiler-guided repair loop");
  std::string repair_path, repair_fixer, repair_k, repair_traces, repair_report,
      repair_refs, repair_rules, repair_url, repair_model, repair_replay;
  CommonFlags repair_flags;
  repair->add_option("corpus", repair_path, "Corpus file")->required();
  CLI::Option* repair_fixer_opt =
      repair->add_option("--fixer", repair_fixer, "rules, model or oracle");
  CLI::Option* repair_k_opt =
      repair->add_option("--max-iterations", repair_k, "Outer iteration cap K");
  repair->add_option("--traces", repair_traces, "Directory for per-snippet traces");
  repair->add_option("--report", repair_report, "Summary report (JSON)");
  CLI::Option* repair_refs_opt = repair->add_option(
      "--references", repair_refs, "Known-good sources for the oracle (corpus file)");
  CLI::Option* repair_rules_opt = repair->add_option(
      "--rules", repair_rules, "Enabled rules: semicolon,header,undeclared,delimiter");
  CLI::Option* repair_url_opt = repair->add_option("--model-url", repair_url, "Chat endpoint");
  CLI::Option* repair_model_opt = repair->add_option("--model-name", repair_model, "Model");
  CLI::Option* repair_replay_opt =
      repair->add_option("--replay", repair_replay, "Recorded replies (JSON lines)");
  AddCompilerFlags(repair, repair_flags);
  AddJobs(repair, repair_flags);
  AddLang(repair, repair_flags);

  // inject
  CLI::App* inject = app.add_subcommand("inject", "Introduce one compile error per snippet");
  std::string inject_path, inject_kinds, inject_seed, inject_out, inject_corpus_out,
      inject_originals_out;
  CommonFlags inject_flags;
  inject->add_option("corpus", inject_path, "Corpus file")->required();
  CLI::Option* inject_kinds_opt =
      inject->add_option("--kinds", inject_kinds, "init,typedef,op,paren");
  CLI::Option* inject_seed_opt = inject->add_option("--seed", inject_seed, "RNG seed");
  inject->add_option("--out", inject_out, "Mutations (JSON lines)");
  inject->add_option("--corpus-out", inject_corpus_out, "Mutated snippets as a corpus");
  inject->add_option("--originals-out", inject_originals_out,
                     "Original sources under the mutated ids (oracle references)");
  AddCompilerFlags(inject, inject_flags);
  AddJobs(inject, inject_flags);
  AddLang(inject, inject_flags);

  // forge
  CLI::App* forge = app.add_subcommand("forge", "Build the instruction dataset");
  std::string forge_path, forge_kinds, forge_seed, forge_max, forge_out, forge_manifest;
  CommonFlags forge_flags;
  forge->add_option("corpus", forge_path, "Corpus file")->required();
  CLI::Option* forge_kinds_opt = forge->add_option("--kinds", forge_kinds, "Mutation kinds");
  CLI::Option* forge_seed_opt = forge->add_option("--seed", forge_seed, "RNG seed");
  CLI::Option* forge_max_opt = forge->add_option("--max-tokens", forge_max, "Token limit");
  forge->add_option("--out", forge_out, "Dataset (JSON lines)")->required();
  forge->add_option("--manifest", forge_manifest, "Stage manifest (JSON)");
  AddCompilerFlags(forge, forge_flags);
  AddJobs(forge, forge_flags);
  AddLang(forge, forge_flags);

  // report
  CLI::App* report = app.add_subcommand("report", "Re-aggregate saved results");
  std::string report_from, report_kind, report_out, report_ks;
  report->add_option("--from", report_from, "Traces directory or JSON-lines file")
      ->required();
  report->add_option("--kind", report_kind, "compile, classify, repair or ksweep")
      ->required()
      ->check(CLI::IsMember({"compile", "classify", "repair", "ksweep"}));
  report->add_option("--out", report_out, "Report (JSON)");
  CLI::Option* report_ks_opt =
      report->add_option("--ks", report_ks, "K values for ksweep (default 1,2,3,4,5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "codevet: " << e.what() << "\n";
    CLI::App* failing = &app;
    for (CLI::App* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kExitConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Logger log(err, name);

  try {
    Settings s(LoadConfigFile(config_path), name);
    if (!config_path.empty()) s.Str("config", nullptr, "", nullptr, config_path);

    if (chosen == ingest) {
      const long long max_tokens = s.Int("max_tokens", ingest_max_opt, ingest_max, nullptr,
                                         static_cast<long long>(kDefaultMaxTokens));
      if (max_tokens < 1) throw ConfigError("max tokens must be positive");
      log.Event("start", Json{{"corpus", ingest_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(ingest_path);
      ReportRejects(log, loaded);
      const auto parts =
          FilterByLength(loaded.snippets, static_cast<std::size_t>(max_tokens));
      std::ostringstream kept;
      WriteCorpus(kept, parts.kept);
      if (!ingest_out.empty()) WriteFile(ingest_out, kept.str());
      if (!ingest_rejects.empty()) {
        std::vector<Json> lines;
        for (const auto& r : loaded.rejects) lines.push_back(RejectsJson(r));
        WriteFile(ingest_rejects, JsonLines(lines));
      }
      log.Event("done", Json{{"collected", loaded.snippets.size() + loaded.rejects.size()},
                             {"valid", loaded.snippets.size()},
                             {"rejected", loaded.rejects.size()},
                             {"length_kept", parts.kept.size()},
                             {"length_dropped", parts.dropped.size()}});
      out << "kept " << parts.kept.size() << " of " << loaded.snippets.size()
          << " snippets; " << loaded.rejects.size() << " malformed line(s)\n";
      return loaded.rejects.empty() ? kExitOk : kExitItemFailures;
    }

    if (chosen == check) {
      const CompilerConfig config = MakeCompiler(s, check_flags);
      const std::size_t jobs = Jobs(s, check_flags);
      const LangMode mode = ReadLangMode(s, check_flags);
      log.Event("start", Json{{"corpus", check_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(check_path);
      ReportRejects(log, loaded);
      const auto& snippets = loaded.snippets;
      struct Item {
        std::optional<CompileRecord> record;
      };
      auto items = ParallelMap(snippets.size(), jobs, [&](std::size_t i) {
        Item item;
        auto lang = ResolveLang(snippets[i], mode);
        if (!lang) return item;
        item.record = CompileRecord{snippets[i].id, *lang,
                                    CompileCheck(snippets[i].source, *lang, config)};
        return item;
      });
      std::vector<CompileRecord> records;
      std::vector<Json> outcome_lines;
      std::size_t skipped = 0;
      for (auto& item : items) {
        if (!item.record) {
          ++skipped;
          continue;
        }
        outcome_lines.push_back(Json{{"id", item.record->snippet_id},
                                     {"lang", std::string(LabelToWire(item.record->lang))},
                                     {"outcome", ToJson(item.record->outcome)}});
        records.push_back(std::move(*item.record));
      }
      const CorpusReport corpus_report = SummarizeCompile(records);
      Json doc = ToJson(corpus_report);
      doc["skipped_not_c_family"] = skipped;
      doc["rejected_lines"] = loaded.rejects.size();
      doc["compiler_flags"] = Json{{"c", config.CommandLine(LangLabel::kC, "x.c")},
                                   {"cpp", config.CommandLine(LangLabel::kCpp, "x.cpp")}};
      doc["settings"] = s.effective();
      if (!check_report.empty()) WriteFile(check_report, doc.dump(2) + "\n");
      if (!check_outcomes.empty()) WriteFile(check_outcomes, JsonLines(outcome_lines));
      log.Event("done", Json{{"checked", records.size()},
                             {"compilable", corpus_report.total.compilable},
                             {"skipped", skipped}});
      out << RenderCompileReport(corpus_report);
      return loaded.rejects.empty() ? kExitOk : kExitItemFailures;
    }

    if (chosen == classify) {
      const std::string backend_kind =
          s.Str("backend", classify_backend_opt, classify_backend, nullptr, "rules");
      if (backend_kind != "rules" && backend_kind != "model" && backend_kind != "both") {
        throw ConfigError("--backend must be rules, model or both");
      }
      const double threshold = s.Real("threshold", classify_threshold_opt,
                                      classify_threshold, nullptr, kDefaultMislabelThreshold);
      if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ConfigError("threshold must be in [0, 1]");
      }
      std::unique_ptr<ChatBackend> backend;
      if (backend_kind != "rules") {
        backend = MakeBackend(s, classify_url_opt, classify_url, classify_model_opt,
                              classify_model, classify_replay_opt, classify_replay);
      }
      log.Event("start", Json{{"corpus", classify_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(classify_path);
      ReportRejects(log, loaded);
      const auto& snippets = loaded.snippets;

      std::vector<LangScore> rule_scores;
      for (const auto& sn : snippets) rule_scores.push_back(Classify(sn));
      std::vector<ModelClassification> model;
      if (backend) {
        model = ParallelMap(snippets.size(), 4, [&](std::size_t i) {
          return ModelClassify(snippets[i], *backend);
        });
      }
      std::size_t backend_failures = 0;
      std::vector<Json> predictions;
      std::vector<std::pair<LangLabel, LangLabel>> rule_pairs, model_pairs;
      for (std::size_t i = 0; i < snippets.size(); ++i) {
        Json p;
        p["id"] = snippets[i].id;
        p["claimed"] = std::string(LabelToWire(snippets[i].claimed_lang));
        if (backend_kind != "model") {
          p["predicted"] = std::string(LabelToWire(rule_scores[i].predicted));
          p["confidence"] = rule_scores[i].confidence;
        }
        if (backend) {
          p["model_predicted"] = std::string(LabelToWire(model[i].score.predicted));
          if (model[i].error) {
            ++backend_failures;
            p["model_error"] = model[i].error_message;
          }
          if (backend_kind == "model") p["predicted"] = p["model_predicted"];
        }
        if (snippets[i].claimed_lang != LangLabel::kUnknown) {
          rule_pairs.emplace_back(snippets[i].claimed_lang, rule_scores[i].predicted);
          if (backend) {
            model_pairs.emplace_back(snippets[i].claimed_lang, model[i].score.predicted);
          }
        }
        predictions.push_back(std::move(p));
      }
      Json doc;
      doc["settings"] = s.effective();
      doc["n"] = snippets.size();
      if (backend_kind != "model") {
        doc["mislabels"] = ToJson(DetectMislabels(snippets, rule_scores, threshold));
        if (!rule_pairs.empty()) {
          doc["agreement_with_claimed"] = ToJson(SummarizeClassification(rule_pairs));
        }
      }
      if (backend) {
        std::vector<LangScore> model_scores;
        for (const auto& m : model) model_scores.push_back(m.score);
        doc["model_mislabels"] = ToJson(DetectMislabels(snippets, model_scores, threshold));
        if (!model_pairs.empty()) {
          doc["model_agreement_with_claimed"] = ToJson(SummarizeClassification(model_pairs));
        }
        doc["backend_failures"] = backend_failures;
      }
      if (!classify_report.empty()) WriteFile(classify_report, doc.dump(2) + "\n");
      if (!classify_predictions.empty()) {
        WriteFile(classify_predictions, JsonLines(predictions));
      }
      if (!rule_pairs.empty() && backend_kind != "model") {
        out << RenderClassReport(SummarizeClassification(rule_pairs));
      }
      log.Event("done", Json{{"classified", snippets.size()},
                             {"backend_failures", backend_failures}});
      return loaded.rejects.empty() && backend_failures == 0 ? kExitOk
                                                             : kExitItemFailures;
    }

    if (chosen == repair) {
      const CompilerConfig config = MakeCompiler(s, repair_flags);
      const std::size_t jobs = Jobs(s, repair_flags);
      const LangMode mode = ReadLangMode(s, repair_flags);
      const std::string fixer_kind =
          s.Str("fixer", repair_fixer_opt, repair_fixer, nullptr, "rules");
      const long long k = s.Int("max_iterations", repair_k_opt, repair_k, nullptr,
                                kDefaultMaxIterations);
      if (k < 1) throw ConfigError("max iterations must be at least 1");
      std::unique_ptr<FixerBackend> fixer;
      std::unique_ptr<ChatBackend> backend;
      if (fixer_kind == "rules") {
        const std::string rules = s.Str("rules", repair_rules_opt, repair_rules, nullptr,
                                        "semicolon,header,undeclared,delimiter");
        std::set<RuleKind> enabled;
        std::stringstream in(rules);
        std::string item;
        while (std::getline(in, item, ',')) {
          auto rule = RuleKindFromName(item);
          if (!rule) throw ConfigError("unknown rule '" + item + "'");
          enabled.insert(*rule);
        }
        fixer = std::make_unique<RuleFixer>(enabled);
      } else if (fixer_kind == "oracle") {
        const std::string refs =
            s.Str("references", repair_refs_opt, repair_refs, nullptr, "");
        if (refs.empty()) throw ConfigError("--fixer oracle needs --references");
        auto oracle = std::make_unique<OracleFixer>();
        for (auto& sn : LoadInput(refs).snippets) oracle->Add(sn.id, sn.source);
        fixer = std::move(oracle);
      } else if (fixer_kind == "model") {
        backend = MakeBackend(s, repair_url_opt, repair_url, repair_model_opt,
                              repair_model, repair_replay_opt, repair_replay);
        fixer = std::make_unique<ModelFixer>(*backend);
      } else {
        throw ConfigError("--fixer must be rules, model or oracle");
      }
      log.Event("start", Json{{"corpus", repair_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(repair_path);
      ReportRejects(log, loaded);
      std::vector<CodeSnippet> snippets;
      std::size_t skipped = 0;
      for (const auto& sn : loaded.snippets) {
        auto lang = ResolveLang(sn, mode);
        if (!lang) {
          ++skipped;
          continue;
        }
        CodeSnippet copy = sn;
        copy.claimed_lang = *lang;
        snippets.push_back(std::move(copy));
      }
      RepairOptions options;
      options.max_iterations = static_cast<int>(k);
      const auto batch = BatchRepair(snippets, config, *fixer, options, jobs);
      std::size_t io_failures = 0;
      if (!repair_traces.empty()) {
        for (std::size_t i = 0; i < batch.traces.size(); ++i) {
          char prefix[16];
          std::snprintf(prefix, sizeof(prefix), "%05zu-", i);
          const fs::path file = fs::path(repair_traces) /
                                (prefix + SafeFileStem(batch.traces[i].snippet_id) + ".json");
          try {
            WriteFile(file, ToJson(batch.traces[i], true).dump(2) + "\n");
          } catch (const IoFailure& e) {
            ++io_failures;
            log.Event("io_error", Json{{"message", e.what()}});
          }
        }
      }
      Json doc;
      doc["settings"] = s.effective();
      doc["summary"] = ToJson(batch.summary);
      doc["skipped_not_c_family"] = skipped;
      Json unrepaired = Json::array();
      for (const auto& item : Unrepaired(batch.traces)) {
        unrepaired.push_back(Json{{"snippet_id", item.snippet_id},
                                  {"status", std::string(RepairStatusName(item.status))},
                                  {"first_error", item.first_error}});
      }
      doc["unrepaired"] = unrepaired;
      if (!repair_report.empty()) WriteFile(repair_report, doc.dump(2) + "\n");
      out << RenderRepairSummary(batch.summary);
      log.Event("done", Json{{"repaired", batch.summary.repaired_count},
                             {"fixer_failed", batch.summary.fixer_failed}});
      const bool failures = !loaded.rejects.empty() || batch.summary.fixer_failed > 0 ||
                            io_failures > 0;
      return failures ? kExitItemFailures : kExitOk;
    }

    if (chosen == inject) {
      const CompilerConfig config = MakeCompiler(s, inject_flags);
      const std::size_t jobs = Jobs(s, inject_flags);
      const LangMode mode = ReadLangMode(s, inject_flags);
      std::vector<MutationKind> kinds;
      try {
        kinds = ParseMutationKinds(s.Str("kinds", inject_kinds_opt, inject_kinds, nullptr,
                                         "init,typedef,op,paren"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      const std::uint64_t seed =
          s.UInt64("seed", inject_seed_opt, inject_seed, "CODEVET_SEED", 0);
      log.Event("start", Json{{"corpus", inject_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(inject_path);
      ReportRejects(log, loaded);
      const auto& snippets = loaded.snippets;
      struct Item {
        std::vector<Json> lines;
        std::vector<CodeSnippet> mutated;
        std::vector<CodeSnippet> originals;
        std::vector<Json> events;
      };
      auto items = ParallelMap(snippets.size(), jobs, [&](std::size_t i) {
        Item item;
        const CodeSnippet& sn = snippets[i];
        auto lang = ResolveLang(sn, mode);
        if (!lang) {
          item.events.push_back(Json{{"id", sn.id}, {"skipped", "not C or C++"}});
          return item;
        }
        if (!CompileCheck(sn.source, *lang, config).compilable) {
          item.events.push_back(Json{{"id", sn.id}, {"skipped", "not compilable"}});
          return item;
        }
        for (MutationKind kind : kinds) {
          const std::string wire(MutationKindWire(kind));
          InjectResult r;
          try {
            r = InjectError(sn.source, *lang, kind, seed, config, sn.id);
          } catch (const ParseFailure& e) {
            item.events.push_back(Json{{"id", sn.id}, {"skipped", e.what()}});
            break;
          }
          if (!r.applied) {
            item.events.push_back(
                Json{{"id", sn.id}, {"kind", wire}, {"not_applicable", r.not_applicable}});
            continue;
          }
          CodeSnippet mutated{sn.id + ":" + wire, r.mutated, *lang, sn.origin};
          CodeSnippet original{mutated.id, sn.source, *lang, sn.origin};
          Json line;
          line["snippet"] = Json::parse(FormatRecord(mutated));
          line["mutation"] = ToJson(r.record);
          Json diags = Json::array();
          for (const auto& d : r.outcome.diagnostics) diags.push_back(ToJson(d));
          line["diagnostics"] = diags;
          item.lines.push_back(std::move(line));
          item.mutated.push_back(std::move(mutated));
          item.originals.push_back(std::move(original));
        }
        return item;
      });
      std::vector<Json> lines;
      std::vector<CodeSnippet> mutated, originals;
      for (auto& item : items) {
        for (auto& e : item.events) log.Event("item", e);
        for (auto& l : item.lines) lines.push_back(std::move(l));
        for (auto& m : item.mutated) mutated.push_back(std::move(m));
        for (auto& o : item.originals) originals.push_back(std::move(o));
      }
      if (!inject_out.empty()) WriteFile(inject_out, JsonLines(lines));
      if (!inject_corpus_out.empty()) {
        std::ostringstream corpus;
        WriteCorpus(corpus, mutated);
        WriteFile(inject_corpus_out, corpus.str());
      }
      if (!inject_originals_out.empty()) {
        std::ostringstream corpus;
        WriteCorpus(corpus, originals);
        WriteFile(inject_originals_out, corpus.str());
      }
      if (inject_out.empty()) out << JsonLines(lines);
      log.Event("done", Json{{"snippets", snippets.size()}, {"mutations", lines.size()}});
      return loaded.rejects.empty() ? kExitOk : kExitItemFailures;
    }

    if (chosen == forge) {
      const CompilerConfig config = MakeCompiler(s, forge_flags);
      ForgeOptions options;
      options.jobs = Jobs(s, forge_flags);
      const LangMode mode = ReadLangMode(s, forge_flags);
      try {
        options.kinds = ParseMutationKinds(
            s.Str("kinds", forge_kinds_opt, forge_kinds, nullptr, "init,typedef,op,paren"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      options.seed = s.UInt64("seed", forge_seed_opt, forge_seed, "CODEVET_SEED", 0);
      const long long max_tokens = s.Int("max_tokens", forge_max_opt, forge_max, nullptr,
                                         static_cast<long long>(kDefaultMaxTokens));
      if (max_tokens < 1) throw ConfigError("max tokens must be positive");
      options.max_tokens = static_cast<std::size_t>(max_tokens);
      log.Event("start", Json{{"corpus", forge_path}, {"settings", s.effective()}});
      const LoadResult loaded = LoadInput(forge_path);
      ReportRejects(log, loaded);
      std::vector<CodeSnippet> snippets = loaded.snippets;
      for (auto& sn : snippets) {
        if (auto lang = ResolveLang(sn, mode)) sn.claimed_lang = *lang;
      }
      const ForgeResult result = ForgeDataset(snippets, config, options);
      std::vector<Json> lines;
      for (const auto& r : result.records) lines.push_back(ToJson(r));
      WriteFile(forge_out, JsonLines(lines));
      Json manifest = ToJson(result.manifest);
      manifest["rejected_lines"] = loaded.rejects.size();
      Json settings = s.effective();
      settings["corpus"] = forge_path;
      settings["out"] = forge_out;
      manifest["settings"] = settings;
      if (!forge_manifest.empty()) WriteFile(forge_manifest, manifest.dump(2) + "\n");
      const auto& m = result.manifest;
      log.Event("done", Json{{"collected", m.collected},
                             {"compilable", m.compilable},
                             {"length_kept", m.length_kept},
                             {"emitted", m.emitted}});
      out << "collected " << m.collected << ", compilable " << m.compilable
          << ", length-kept " << m.length_kept << ", emitted " << m.emitted << "\n";
      return loaded.rejects.empty() ? kExitOk : kExitItemFailures;
    }

    if (chosen == report) {
      log.Event("start", Json{{"from", report_from}, {"kind", report_kind}});
      const std::vector<Json> docs = ReadDocuments(report_from);
      Json doc;
      std::string text;
      if (report_kind == "compile") {
        std::vector<CompileRecord> records;
        for (const auto& d : docs) {
          try {
            auto lang = LabelFromWire(d.at("lang").get<std::string>());
            if (!lang) throw ConfigError("unknown language in outcomes");
            records.push_back(CompileRecord{d.at("id").get<std::string>(), *lang,
                                            CompileOutcomeFromJson(d.at("outcome"))});
          } catch (const Json::exception& e) {
            throw ConfigError(std::string("malformed outcome line: ") + e.what());
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }
        const CorpusReport r = SummarizeCompile(records);
        doc = ToJson(r);
        text = RenderCompileReport(r);
      } else if (report_kind == "classify") {
        std::vector<std::pair<LangLabel, LangLabel>> pairs;
        for (const auto& d : docs) {
          const std::string truth_key = d.contains("truth") ? "truth" : "claimed";
          if (!d.contains(truth_key) || !d.contains("predicted")) {
            throw ConfigError("classify input needs truth/claimed and predicted");
          }
          auto truth = LabelFromWire(d.at(truth_key).get<std::string>());
          const auto pred_wire = d.at("predicted").get<std::string>();
          auto pred = pred_wire == "unknown" ? std::optional<LangLabel>(LangLabel::kUnknown)
                                             : LabelFromWire(pred_wire);
          if (!truth) continue;  // unlabeled snippets carry no ground truth
          if (!pred) throw ConfigError("unknown predicted label '" + pred_wire + "'");
          pairs.emplace_back(*truth, *pred);
        }
        try {
          const ClassReport r = SummarizeClassification(pairs);
          doc = ToJson(r);
          text = RenderClassReport(r);
        } catch (const EmptyInput& e) {
          throw ConfigError(e.what());
        }
      } else {
        std::vector<RepairTrace> traces;
        for (const auto& d : docs) {
          try {
            traces.push_back(RepairTraceFromJson(d));
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }
        if (report_kind == "repair") {
          const RepairSummary summary = SummarizeTraces(traces);
          doc["summary"] = ToJson(summary);
          Json unrepaired = Json::array();
          for (const auto& item : Unrepaired(traces)) {
            unrepaired.push_back(
                Json{{"snippet_id", item.snippet_id},
                     {"status", std::string(RepairStatusName(item.status))},
                     {"first_error", item.first_error}});
          }
          doc["unrepaired"] = unrepaired;
          text = RenderRepairSummary(summary);
        } else {
          const std::vector<int> ks = ParseKs(
              s.Str("ks", report_ks_opt, report_ks, nullptr, "1,2,3,4,5"));
          try {
            const KSweepReport r = KSweepFromTraces(traces, ks);
            doc = ToJson(r);
            text = RenderKSweep(r);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }
      }
      if (!report_out.empty()) WriteFile(report_out, doc.dump(2) + "\n");
      out << text;
      log.Event("done", Json{{"documents", docs.size()}});
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "codevet " << name << ": " << e.what() << "\n";
    return kExitConfigError;
  } catch (const CompilerNotFound& e) {
    err << "codevet " << name << ": " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoFailure& e) {
    err << "codevet " << name << ": " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "codevet " << name << ": " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace codevet
