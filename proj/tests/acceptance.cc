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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "codevet/compiler.h"
#include "codevet/corpus.h"
#include "codevet/diagnostics.h"
#include "codevet/fixers.h"
#include "codevet/forge.h"
#include "codevet/inject.h"
#include "codevet/langid.h"
#include "codevet/metrics.h"
#include "codevet/repair.h"
#include "codevet/serialize.h"
#include "codevet/subprocess.h"
#include "support.h"

namespace fs = std::filesystem;
using namespace codevet;
using codevet::testing::CompilableFixtures;
using codevet::testing::FixtureDir;
using codevet::testing::Injected;
using codevet::testing::ReadText;

namespace {

constexpr std::size_t kMinCFixtures = 50;
constexpr std::size_t kMinCppFixtures = 25;
constexpr double kInjectBudgetSeconds = 120.0;
constexpr double kRuleRepairFloor = 0.80;
constexpr int kRuleK = 3;
constexpr double kCategoryFloor = 0.90;
constexpr std::size_t kGoldenPerCategory = 10;
constexpr std::size_t kLangIdPerLanguage = 10;
constexpr std::size_t kMislabelCorpusSize = 30;
constexpr std::size_t kPlantedObjc = 10;
constexpr double kSampleFraction = 0.10;
constexpr std::uint64_t kSeed = 20240607;
constexpr std::uint64_t kSampleSeed = 7;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void Require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

int failures = 0;

void Report(const char* id, const char* title, Verdict& v) {
  std::cout << id << " " << (v.pass ? "PASS" : "FAIL") << " " << title << ":"
            << v.detail.str() << std::endl;
  if (!v.pass) ++failures;
}

std::string Ratio(std::size_t num, std::size_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------

void InjectionSoundness(const std::vector<CodeSnippet>& fixtures,
                        const std::vector<Injected>& injected, double seconds,
                        const CompilerConfig& config) {
  Verdict v;
  std::size_t c = 0, cpp = 0, not_compilable_originals = 0;
  for (const auto& sn : fixtures) {
    (sn.claimed_lang == LangLabel::kC ? c : cpp)++;
    if (!CompileCheck(sn.source, sn.claimed_lang, config).compilable) {
      ++not_compilable_originals;
    }
  }
  v.Require(c >= kMinCFixtures, "C fixtures " + std::to_string(c));
  v.Require(cpp >= kMinCppFixtures, "C++ fixtures " + std::to_string(cpp));
  v.Require(not_compilable_originals == 0, "fixtures not compilable");
  v.Require(!injected.empty(), "no mutations emitted");

  std::size_t broken = 0, reverted = 0;
  std::map<std::string, std::size_t> per_kind;
  for (const auto& item : injected) {
    ++per_kind[std::string(MutationKindWire(item.result.record.kind))];
    if (!CompileCheck(item.mutated.source, item.mutated.claimed_lang, config).compilable) {
      ++broken;
    }
    if (Revert(item.mutated.source, item.result.record) == item.original.source) {
      ++reverted;
    }
  }
  v.Require(broken == injected.size(), "non-compilable " + Ratio(broken, injected.size()));
  v.Require(reverted == injected.size(), "reverted " + Ratio(reverted, injected.size()));
  v.Require(seconds <= kInjectBudgetSeconds, "runtime over budget");
  v.detail << " fixtures C=" << c << " C++=" << cpp << ", mutations=" << injected.size()
           << " (";
  for (const auto& [kind, n] : per_kind) v.detail << kind << "=" << n << " ";
  v.detail << "), non-compilable " << Ratio(broken, injected.size()) << ", revert "
           << Ratio(reverted, injected.size()) << ", injection " << seconds << "s";
  Report("AC1", "injection soundness", v);
}

std::vector<CodeSnippet> MutatedCorpus(const std::vector<Injected>& injected) {
  std::vector<CodeSnippet> out;
  for (const auto& item : injected) out.push_back(item.mutated);
  return out;
}

void OracleRoundTrip(const std::vector<Injected>& injected, const CompilerConfig& config,
                     std::size_t jobs) {
  Verdict v;
  OracleFixer oracle;
  for (const auto& item : injected) oracle.Add(item.mutated.id, item.original.source);
  const auto batch = BatchRepair(MutatedCorpus(injected), config, oracle, {}, jobs);
  std::size_t repaired = 0, one_iteration = 0, reverified = 0;
  for (const auto& t : batch.traces) {
    if (t.status != RepairStatus::kRepaired) continue;
    ++repaired;
    if (t.iterations_used == 1) ++one_iteration;
    if (CompileCheck(t.final_source, t.lang, config).compilable) ++reverified;
  }
  const std::size_t n = batch.traces.size();
  v.Require(n == injected.size() && n > 0, "trace count");
  v.Require(repaired == n, "repaired " + Ratio(repaired, n));
  v.Require(one_iteration == n, "one iteration " + Ratio(one_iteration, n));
  v.Require(reverified == n, "re-verified " + Ratio(reverified, n));
  v.detail << " repaired " << Ratio(repaired, n) << ", in one iteration "
           << Ratio(one_iteration, n) << ", independently compilable " << Ratio(reverified, n);
  Report("AC2", "oracle round-trip", v);
}

// Independent lexer for the coverage restriction: punctuation and words
// with comments, literals and preprocessor lines removed.
struct LexToken {
  std::string text;
  std::size_t offset;
};

std::vector<LexToken> Lex(const std::string& src) {
  std::vector<LexToken> out;
  std::size_t i = 0;
  bool line_start = true;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      line_start = true;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (line_start && c == '#') {
      while (i < src.size() && !(src[i] == '\n' && src[i - 1] != '\\')) ++i;
      continue;
    }
    line_start = false;
    if (src.compare(i, 2, "//") == 0) {
      i = std::min(src.find('\n', i), src.size());
      continue;
    }
    if (src.compare(i, 2, "/*") == 0) {
      const auto end = src.find("*/", i + 2);
      i = end == std::string::npos ? src.size() : end + 2;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != c) j += src[j] == '\\' ? 2 : 1;
      out.push_back({"\"", i});
      i = j + 1;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({src.substr(i, j - i), i});
      i = j;
      continue;
    }
    out.push_back({std::string(1, c), i});
    ++i;
  }
  return out;
}

std::size_t OffsetOf(const std::string& src, int line, int column) {
  std::size_t pos = 0;
  for (int l = 1; l < line && pos != std::string::npos; ++l) {
    pos = src.find('\n', pos);
    if (pos != std::string::npos) ++pos;
  }
  return pos == std::string::npos ? src.size() : pos + static_cast<std::size_t>(column - 1);
}

// The documented pattern a broken source falls under, judged from its
// first error and the source alone:
//   delimiter   an opener without its closer anywhere in the file
//   semicolon   ';' expected at statement level, or in a for header
//               that still has room for one
//   header      an undeclared name the standard headers provide
//   undeclared  an undeclared name used as a value
// Sources with a closer lacking its opener fit none of them.
std::optional<std::string> PatternOf(const std::string& src, const Diagnostic& error,
                                     LangLabel lang) {
  const auto tokens = Lex(src);
  std::map<char, int> balance;
  for (const auto& t : tokens) {
    if (t.text == "(") ++balance['('];
    if (t.text == ")") --balance['('];
    if (t.text == "[") ++balance['['];
    if (t.text == "]") --balance['['];
    if (t.text == "{") ++balance['{'];
    if (t.text == "}") --balance['{'];
  }
  for (const auto& [_, b] : balance) {
    if (b < 0) return std::nullopt;
  }
  for (const auto& [_, b] : balance) {
    if (b > 0) return "delimiter";
  }
  if (!error.line || !error.column) return std::nullopt;
  const std::size_t at = OffsetOf(src, *error.line, *error.column);
  static const std::regex expects_semicolon("^expected (.*, )?';'.* before .*");
  if (std::regex_match(error.message, expects_semicolon)) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < tokens.size() && tokens[i].offset < at; ++i) {
      const auto& t = tokens[i].text;
      if (t == "(" || t == "[" || t == "{") open.push_back(i);
      if ((t == ")" || t == "]" || t == "}") && !open.empty()) open.pop_back();
    }
    if (open.empty() || tokens[open.back()].text == "{") return "semicolon";
    const std::size_t o = open.back();
    if (tokens[o].text != "(" || o == 0 || tokens[o - 1].text != "for") return std::nullopt;
    int depth = 0;
    int semicolons = 0;
    for (std::size_t i = o + 1; i < tokens.size() && depth >= 0; ++i) {
      const auto& t = tokens[i].text;
      if (t == "(" || t == "[" || t == "{") ++depth;
      if (t == ")" || t == "]" || t == "}") --depth;
      if (t == ";" && depth == 0) ++semicolons;
    }
    return semicolons < 2 ? std::optional<std::string>("semicolon") : std::nullopt;
  }
  static const std::regex undeclared(
      "^'(\\w+)' (undeclared|was not declared in this scope).*|"
      "^'(\\w+)' is not a member of 'std'.*");
  std::smatch m;
  if (std::regex_match(error.message, m, undeclared)) {
    const std::string symbol = m[1].matched ? m[1].str() : m[3].str();
    if (HeaderFor(symbol, lang)) return "header";
    if (!m[1].matched) return std::nullopt;
    std::size_t i = 0;
    while (i < tokens.size() && tokens[i].offset < at) ++i;
    if (i + 1 < tokens.size()) {
      const auto& next = tokens[i + 1].text;
      const bool word = std::isalnum(static_cast<unsigned char>(next[0])) || next[0] == '_';
      if (word || next == "*" || next == "&") return std::nullopt;
    }
    return "undeclared";
  }
  return std::nullopt;
}

void RuleCoverage(const std::vector<Injected>& injected, const CompilerConfig& config,
                  std::size_t jobs) {
  Verdict v;
  std::vector<CodeSnippet> matched;
  std::map<std::string, std::size_t> per_pattern;
  std::map<std::string, std::string> pattern_of;
  for (const auto& item : injected) {
    const auto errors = item.result.outcome.errors();
    if (errors.empty()) continue;
    const auto pattern =
        PatternOf(item.mutated.source, errors.front(), item.mutated.claimed_lang);
    if (!pattern) continue;
    ++per_pattern[*pattern];
    pattern_of[item.mutated.id] = *pattern;
    matched.push_back(item.mutated);
  }
  RuleFixer fixer;
  RepairOptions options;
  options.max_iterations = kRuleK;
  const auto batch = BatchRepair(matched, config, fixer, options, jobs);
  const std::size_t n = batch.traces.size();
  const std::size_t repaired = batch.summary.repaired_count;
  const double rate = n == 0 ? 0.0 : static_cast<double>(repaired) / n;
  v.Require(n > 0, "no injected records match a rule");
  v.Require(rate >= kRuleRepairFloor, "rate below floor");
  const auto unrepaired = Unrepaired(batch.traces);
  v.Require(unrepaired.size() == n - repaired, "failures not enumerated");
  v.detail << " in-pattern " << n << " of " << injected.size() << " (";
  for (const auto& [p, count] : per_pattern) v.detail << p << "=" << count << " ";
  v.detail << "), repaired " << Ratio(repaired, n) << " = " << FormatRate(rate)
           << " (floor " << kRuleRepairFloor << ")";
  Report("AC3", "rule fixer coverage", v);
  std::map<std::string, const RepairTrace*> by_id;
  for (const auto& t : batch.traces) by_id[t.snippet_id] = &t;
  for (const auto& item : unrepaired) {
    const auto* t = by_id.at(item.snippet_id);
    const auto initial = t->initial_outcome.errors();
    std::cout << "    unrepaired " << item.snippet_id << " [" << pattern_of[item.snippet_id]
              << ", " << RepairStatusName(item.status) << "] initial: "
              << (initial.empty() ? "-" : initial.front().raw) << " | final: "
              << item.first_error << "\n";
  }
}

void KMonotonicity(const std::vector<Injected>& injected, const CompilerConfig& config,
                   std::size_t jobs) {
  Verdict v;
  RuleFixer fixer;
  CompileCache cache(config);
  RepairOptions options;
  options.cache = &cache;
  const KSweepReport report =
      KSweep(MutatedCorpus(injected), config, fixer, {1, 2, 3, 4, 5}, options, jobs);
  for (LangLabel lang : {LangLabel::kC, LangLabel::kCpp}) {
    std::vector<double> rates;
    for (const auto& row : report.rows) {
      const auto& cell = row.by_language.at(lang);
      v.Require(cell.valid, "invalid cell");
      rates.push_back(cell.summary.rate());
    }
    for (std::size_t i = 1; i < rates.size(); ++i) {
      v.Require(rates[i] >= rates[i - 1], std::string(DisplayName(lang)) + " decreases");
    }
    v.Require(rates.size() == 5 && rates[3] == rates[4],
              std::string(DisplayName(lang)) + " no plateau at K=4,5");
    v.detail << " " << DisplayName(lang) << ":";
    for (double r : rates) v.detail << " " << FormatRate(r);
  }
  Report("AC4", "K monotonicity", v);
}

// ---------------------------------------------------------------------------

struct OracleLine {
  int line, column;
  Severity severity;
  std::string message;
};

void DiagnosticParsing() {
  Verdict v;
  const fs::path dir = FixtureDir() / "diagnostics";
  const Json labels = Json::parse(ReadText(dir / "labels.json"));
  static const std::regex header(
      R"(^[^:\s][^:]*:([0-9]+):([0-9]+): (error|fatal error|warning|note): (.*)$)");
  static const std::vector<std::string> scope_words = {"not declared in this scope",
                                                       "out of scope"};
  static const std::vector<std::string> semantic_words = {
      "undeclared", "undefined", "unknown type", "conflicting types", "incompatible"};
  std::map<std::string, std::size_t> per_category;
  std::size_t files = 0, exact = 0, first_ok = 0, category_ok = 0;
  std::size_t precedence = 0, precedence_ok = 0;
  for (auto it = labels.begin(); it != labels.end(); ++it) {
    ++files;
    const std::string name = it.key();
    const fs::path source(name);
    const fs::path golden = dir / source.parent_path() / (source.stem().string() + ".txt");
    const std::string text = ReadText(golden);
    ++per_category[it.value().at("category").get<std::string>()];

    std::vector<OracleLine> expected;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      std::smatch m;
      if (!std::regex_match(line, m, header)) continue;
      const std::string sev = m[3];
      expected.push_back({std::stoi(m[1]), std::stoi(m[2]),
                          sev == "warning" ? Severity::kWarning
                          : sev == "note"  ? Severity::kNote
                                           : Severity::kError,
                          m[4]});
    }
    const auto parsed = ParseDiagnostics(text);
    bool same = parsed.size() == expected.size();
    for (std::size_t i = 0; same && i < parsed.size(); ++i) {
      same = parsed[i].line == expected[i].line && parsed[i].column == expected[i].column &&
             parsed[i].severity == expected[i].severity &&
             parsed[i].message == expected[i].message;
    }
    if (same) ++exact;

    const auto errors = ErrorsOnly(parsed);
    const auto& want = it.value().at("first_error");
    if (!errors.empty() && errors.front().line == want.at(0).get<int>() &&
        errors.front().column == want.at(1).get<int>()) {
      ++first_ok;
    }
    const auto truth = CategoryFromName(it.value().at("category").get<std::string>());
    if (!errors.empty() && truth && errors.front().category == *truth) ++category_ok;

    for (const auto& d : parsed) {
      auto has = [&](const std::vector<std::string>& words) {
        for (const auto& w : words)
          if (d.message.find(w) != std::string::npos) return true;
        return false;
      };
      if (has(scope_words) && has(semantic_words)) {
        ++precedence;
        if (d.category == Category::kScope) ++precedence_ok;
      }
    }
  }
  const double cat_rate = files == 0 ? 0.0 : static_cast<double>(category_ok) / files;
  for (const char* c : {"syntax", "semantic", "scope"}) {
    v.Require(per_category[c] == kGoldenPerCategory, std::string("need 10 ") + c);
  }
  v.Require(exact == files, "exact extraction " + Ratio(exact, files));
  v.Require(first_ok == files, "first error location " + Ratio(first_ok, files));
  v.Require(cat_rate >= kCategoryFloor, "category rate");
  v.Require(precedence > 0, "no precedence cases");
  v.Require(precedence_ok == precedence, "precedence " + Ratio(precedence_ok, precedence));
  v.detail << " exact extraction " << Ratio(exact, files) << ", first-error location "
           << Ratio(first_ok, files) << ", category " << Ratio(category_ok, files) << " = "
           << FormatRate(cat_rate) << ", scope-over-semantic " << Ratio(precedence_ok, precedence);
  Report("AC5", "diagnostic parsing", v);
}

void CommCleanFixture(const CompilerConfig& config) {
  Verdict v;
  const fs::path dir = FixtureDir() / "comm_clean";
  const CodeSnippet broken{"comm_clean", ReadText(dir / "broken.c"), LangLabel::kC, ""};
  const std::string fixed = ReadText(dir / "fixed.c");
  const CompileOutcome outcome = CompileCheck(broken.source, LangLabel::kC, config);
  std::size_t syntax = 0;
  for (const auto& d : outcome.errors())
    if (d.category == Category::kSyntax) ++syntax;
  v.Require(!outcome.compilable, "broken fixture compiles");
  v.Require(syntax >= 1, "no syntax error");

  OracleFixer oracle;
  oracle.Add(broken.id, fixed);
  const RepairTrace trace = Repair(broken, LangLabel::kC, config, oracle);
  v.Require(trace.status == RepairStatus::kRepaired, "not repaired");
  static const std::regex header(
      R"(^[^:\s][^:]*:[0-9]+(:[0-9]+)?: (error|fatal error|warning|note): .*$)");
  std::size_t single = 0;
  for (const auto& step : trace.steps) {
    std::istringstream in(step.prompt);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line))
      if (std::regex_match(line, header)) ++count;
    if (count == 1 && step.prompt.find(step.target_error.raw) != std::string::npos) ++single;
  }
  v.Require(!trace.steps.empty(), "no steps");
  v.Require(single == trace.steps.size(), "prompts with one diagnostic " +
                                              Ratio(single, trace.steps.size()));
  v.detail << " syntax errors " << syntax << ", status " << RepairStatusName(trace.status)
           << ", prompts with exactly one diagnostic " << Ratio(single, trace.steps.size());
  Report("AC6", "comm_clean fixture", v);
}

void LanguageId() {
  Verdict v;
  const auto mini = LoadCorpus(FixtureDir() / "langid" / "mini.jsonl");
  std::map<LangLabel, std::size_t> per_lang;
  std::size_t correct = 0;
  for (const auto& sn : mini.snippets) {
    ++per_lang[sn.claimed_lang];
    const LangScore s = Classify(sn);
    if (s.predicted == sn.claimed_lang) {
      ++correct;
    } else {
      v.detail << " miss " << sn.id << "->" << LabelToWire(s.predicted) << ";";
    }
  }
  v.Require(mini.rejects.empty(), "mini corpus rejects");
  v.Require(per_lang.size() == kNumKnownLabels, "language count");
  for (const auto& [lang, n] : per_lang) {
    v.Require(n == kLangIdPerLanguage, std::string(LabelToWire(lang)) + " count");
  }
  v.Require(correct == mini.snippets.size(), "accuracy");

  const auto mixed = LoadCorpus(FixtureDir() / "langid" / "c_objc_mislabels.jsonl");
  std::set<std::string> planted;
  for (const auto& sn : mixed.snippets) {
    if (sn.id.rfind("objc-", 0) == 0) planted.insert(sn.id);
  }
  const MislabelReport report = DetectMislabels(mixed.snippets);
  std::set<std::string> flagged;
  for (const auto& f : report.findings) flagged.insert(f.snippet_id);
  v.Require(mixed.snippets.size() == kMislabelCorpusSize, "mislabel corpus size");
  v.Require(planted.size() == kPlantedObjc, "planted count");
  v.Require(flagged == planted, "flagged set differs");
  v.detail << " mini-corpus " << Ratio(correct, mini.snippets.size()) << ", flagged "
           << flagged.size() << " of " << mixed.snippets.size() << ", planted matched "
           << (flagged == planted ? "exactly" : "no");
  Report("AC7", "language identification", v);
}

// ---------------------------------------------------------------------------

int RunForge(const fs::path& cwd, std::size_t jobs) {
  ProcessOptions options;
  options.working_dir = cwd;
  options.timeout = std::chrono::duration<double>(1200);
  const ProcessResult r = RunProcess(
      {CODEVET_CLI_PATH, "forge", "corpus.jsonl", "--seed", std::to_string(kSeed),
       "--jobs", std::to_string(jobs), "--out", "dataset.jsonl", "--manifest",
       "manifest.json"},
      options);
  return r.timed_out ? -1 : r.exit_code;
}

void ForgeChecks(const std::vector<CodeSnippet>& fixtures, const CompilerConfig& config,
                 std::size_t jobs) {
  TempDir tmp("codevet-acceptance");
  const fs::path a = tmp.path() / "run-a";
  const fs::path b = tmp.path() / "run-b";
  for (const auto& dir : {a, b}) {
    fs::create_directories(dir);
    WriteCorpus(dir / "corpus.jsonl", fixtures);
  }
  const int rc_a = RunForge(a, jobs);
  const int rc_b = RunForge(b, jobs);

  Verdict v8;
  v8.Require(rc_a == 0 && rc_b == 0,
             "forge exit codes " + std::to_string(rc_a) + "," + std::to_string(rc_b));
  std::string data_a, data_b, manifest_a, manifest_b;
  try {
    data_a = ReadText(a / "dataset.jsonl");
    data_b = ReadText(b / "dataset.jsonl");
    manifest_a = ReadText(a / "manifest.json");
    manifest_b = ReadText(b / "manifest.json");
  } catch (const std::exception& e) {
    v8.Require(false, e.what());
  }
  v8.Require(!data_a.empty(), "empty dataset");
  v8.Require(data_a == data_b, "datasets differ");
  v8.Require(manifest_a == manifest_b, "manifests differ");
  v8.detail << " dataset " << data_a.size() << " bytes, manifest " << manifest_a.size()
            << " bytes, identical " << (data_a == data_b && manifest_a == manifest_b);
  Report("AC8", "end-to-end determinism", v8);

  Verdict v9;
  std::vector<InstructionRecord> records;
  std::istringstream in(data_a);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(InstructionRecordFromJson(Json::parse(line)));
  }
  const std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(kSampleFraction * static_cast<double>(records.size()) + 0.999));
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(kSampleSeed);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(std::min(k, order.size()));
  std::size_t response_ok = 0, input_broken = 0, revert_ok = 0;
  for (std::size_t i : order) {
    const auto& r = records[i];
    if (CompileCheck(r.response, r.lang, config).compilable) ++response_ok;
    if (!CompileCheck(r.input, r.lang, config).compilable) ++input_broken;
    try {
      if (Revert(r.input, r.mutation) == r.response) ++revert_ok;
    } catch (const SpanMismatch&) {
    }
  }
  const std::size_t n = order.size();
  v9.Require(n > 0, "no records");
  v9.Require(response_ok == n, "response compiles " + Ratio(response_ok, n));
  v9.Require(input_broken == n, "input broken " + Ratio(input_broken, n));
  v9.Require(revert_ok == n, "revert " + Ratio(revert_ok, n));
  v9.detail << " sampled " << n << " of " << records.size() << ": response compiles "
            << Ratio(response_ok, n) << ", input fails " << Ratio(input_broken, n)
            << ", revert matches " << Ratio(revert_ok, n);
  Report("AC9", "forge integrity", v9);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"codevet acceptance suite"};
  std::size_t jobs = 4;
  app.add_option("--jobs", jobs, "Parallel workers");
  CLI11_PARSE(app, argc, argv);

  const CompilerConfig config = CompilerConfig::FromEnvironment();
  const auto fixtures = CompilableFixtures();

  const auto start = std::chrono::steady_clock::now();
  const auto injected = codevet::testing::InjectAll(fixtures, config, kSeed, jobs);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  InjectionSoundness(fixtures, injected, seconds, config);
  OracleRoundTrip(injected, config, jobs);
  RuleCoverage(injected, config, jobs);
  KMonotonicity(injected, config, jobs);
  DiagnosticParsing();
  CommCleanFixture(config);
  LanguageId();
  ForgeChecks(fixtures, config, jobs);

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
