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

#include "codevet/metrics.h"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace codevet {

namespace {

constexpr LangLabel kSweepLanguages[] = {LangLabel::kC, LangLabel::kCpp};

void Tally(CompileTally& tally, const CompileOutcome& outcome) {
  ++tally.n;
  if (outcome.compilable) ++tally.compilable;
  for (const auto& d : outcome.diagnostics) {
    if (d.severity != Severity::kError) continue;
    ++tally.error_diagnostics;
    ++tally.category_histogram[d.category];
  }
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string Fixed2(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

std::string Pad(std::string_view text, std::size_t width) {
  std::string out(text);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string PadLeft(std::string_view text, std::size_t width) {
  std::string out;
  if (text.size() < width) out.append(width - text.size(), ' ');
  out += text;
  return out;
}

}  // namespace

CorpusReport SummarizeCompile(const std::vector<CompileRecord>& outcomes) {
  CorpusReport report;
  for (const auto& record : outcomes) {
    Tally(report.total, record.outcome);
    Tally(report.by_language[record.lang], record.outcome);
    if (report.compiler_identity.empty()) {
      report.compiler_identity = record.outcome.compiler_identity;
    }
  }
  return report;
}

ClassReport SummarizeClassification(
    const std::vector<std::pair<LangLabel, LangLabel>>& pairs) {
  if (pairs.empty()) throw EmptyInput();
  std::set<LangLabel> seen;
  for (const auto& [truth, predicted] : pairs) {
    if (truth == LangLabel::kUnknown) {
      throw std::invalid_argument("ground-truth label must not be unknown");
    }
    seen.insert(truth);
    seen.insert(predicted);
  }
  ClassReport report;
  report.n = pairs.size();
  report.labels.assign(seen.begin(), seen.end());  // enum order
  const std::size_t m = report.labels.size();
  auto index = [&](LangLabel label) {
    return static_cast<std::size_t>(
        std::find(report.labels.begin(), report.labels.end(), label) -
        report.labels.begin());
  };
  report.confusion.assign(m, std::vector<std::size_t>(m, 0));
  std::size_t correct = 0;
  for (const auto& [truth, predicted] : pairs) {
    ++report.confusion[index(truth)][index(predicted)];
    if (truth == predicted) ++correct;
  }
  report.accuracy = Ratio(correct, pairs.size());

  std::size_t label_count = 0;
  for (std::size_t r = 0; r < m; ++r) {
    LabelMetrics metrics;
    for (std::size_t c = 0; c < m; ++c) {
      metrics.support += report.confusion[r][c];
      metrics.predicted += report.confusion[c][r];
    }
    if (metrics.support == 0) continue;
    metrics.true_positive = report.confusion[r][r];
    metrics.precision = Ratio(metrics.true_positive, metrics.predicted);
    metrics.recall = Ratio(metrics.true_positive, metrics.support);
    const double sum = metrics.precision + metrics.recall;
    metrics.f1 = sum > 0 ? 2 * metrics.precision * metrics.recall / sum : 0.0;
    report.macro_precision += metrics.precision;
    report.macro_recall += metrics.recall;
    report.macro_f1 += metrics.f1;
    ++label_count;
    report.per_label[report.labels[r]] = metrics;
  }
  report.macro_precision /= static_cast<double>(label_count);
  report.macro_recall /= static_cast<double>(label_count);
  report.macro_f1 /= static_cast<double>(label_count);
  return report;
}

KSweepReport KSweep(const std::vector<CodeSnippet>& corpus,
                    const CompilerConfig& config, FixerBackend& fixer,
                    const std::vector<int>& ks, RepairOptions options,
                    std::size_t jobs) {
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1])) {
      throw std::invalid_argument("K values must be positive and strictly increasing");
    }
  }
  KSweepReport report;
  for (int k : ks) {
    KSweepRow row;
    row.k = k;
    options.max_iterations = k;
    try {
      const auto batch = BatchRepair(corpus, config, fixer, options, jobs);
      for (LangLabel lang : kSweepLanguages) {
        KSweepCell cell;
        auto it = batch.summary.by_language.find(lang);
        if (it != batch.summary.by_language.end()) cell.summary = it->second;
        row.by_language[lang] = cell;
      }
    } catch (const std::exception& e) {
      for (LangLabel lang : kSweepLanguages) {
        KSweepCell cell;
        cell.valid = false;
        cell.error = e.what();
        row.by_language[lang] = cell;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

KSweepReport KSweepFromTraces(const std::vector<RepairTrace>& traces,
                              const std::vector<int>& ks) {
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || (i > 0 && ks[i] <= ks[i - 1])) {
      throw std::invalid_argument("K values must be positive and strictly increasing");
    }
  }
  int cap = traces.empty() ? 0 : traces.front().max_iterations;
  for (const auto& t : traces) cap = std::min(cap, t.max_iterations);

  KSweepReport report;
  for (int k : ks) {
    KSweepRow row;
    row.k = k;
    for (LangLabel lang : kSweepLanguages) {
      KSweepCell cell;
      if (!traces.empty() && k > cap) {
        cell.valid = false;
        cell.error = "traces were produced with K=" + std::to_string(cap);
      }
      row.by_language[lang] = cell;
    }
    for (const auto& t : traces) {
      auto it = row.by_language.find(t.lang);
      if (it == row.by_language.end() || !it->second.valid) continue;
      auto& summary = it->second.summary;
      ++summary.n;
      if (t.status == RepairStatus::kAlreadyCompilable) {
        ++summary.compilable;
      } else if (t.status == RepairStatus::kRepaired && t.iterations_used <= k) {
        ++summary.compilable;
        ++summary.repaired;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<UnrepairedItem> Unrepaired(const std::vector<RepairTrace>& traces) {
  std::vector<UnrepairedItem> items;
  for (const auto& t : traces) {
    if (t.status == RepairStatus::kRepaired ||
        t.status == RepairStatus::kAlreadyCompilable) {
      continue;
    }
    UnrepairedItem item;
    item.snippet_id = t.snippet_id;
    item.status = t.status;
    const auto errors = t.final_outcome.errors();
    item.first_error = errors.empty() ? t.error : errors.front().raw;
    items.push_back(std::move(item));
  }
  return items;
}

std::string FormatRate(std::optional<double> rate) {
  return rate ? Fixed2(*rate) : "n/a";
}

std::string RenderCompileReport(const CorpusReport& report) {
  std::ostringstream out;
  out << "Compiler: "
      << (report.compiler_identity.empty() ? "-" : report.compiler_identity)
      << "\n";
  out << Pad("Language", 12) << PadLeft("Snippets", 10) << PadLeft("Compilable", 12)
      << PadLeft("Rate", 8) << "\n";
  auto line = [&](std::string_view name, const CompileTally& t) {
    out << Pad(name, 12) << PadLeft(std::to_string(t.n), 10)
        << PadLeft(std::to_string(t.compilable), 12) << PadLeft(FormatRate(t.rate()), 8)
        << "\n";
  };
  for (const auto& [lang, tally] : report.by_language) line(DisplayName(lang), tally);
  line("All", report.total);
  out << "\nError categories (" << report.total.error_diagnostics
      << " error diagnostics)\n";
  for (Category c : {Category::kSyntax, Category::kSemantic, Category::kScope,
                     Category::kOther}) {
    auto it = report.total.category_histogram.find(c);
    const std::size_t count = it == report.total.category_histogram.end() ? 0 : it->second;
    out << Pad(CategoryName(c), 12) << PadLeft(std::to_string(count), 10)
        << PadLeft(Fixed2(Ratio(count, report.total.error_diagnostics)), 8) << "\n";
  }
  return out.str();
}

std::string RenderClassReport(const ClassReport& report) {
  std::ostringstream out;
  out << Pad("Label", 14) << PadLeft("Precision", 10) << PadLeft("Recall", 8)
      << PadLeft("F1", 8) << PadLeft("Support", 9) << "\n";
  for (const auto& [label, m] : report.per_label) {
    out << Pad(DisplayName(label), 14) << PadLeft(Fixed2(m.precision), 10)
        << PadLeft(Fixed2(m.recall), 8) << PadLeft(Fixed2(m.f1), 8)
        << PadLeft(std::to_string(m.support), 9) << "\n";
  }
  out << Pad("Macro", 14) << PadLeft(Fixed2(report.macro_precision), 10)
      << PadLeft(Fixed2(report.macro_recall), 8) << PadLeft(Fixed2(report.macro_f1), 8)
      << PadLeft(std::to_string(report.n), 9) << "\n";
  out << "Accuracy " << Fixed2(report.accuracy) << "\n";
  return out.str();
}

std::string RenderRepairSummary(const RepairSummary& summary) {
  std::ostringstream out;
  out << Pad("Language", 12) << PadLeft("Snippets", 10) << PadLeft("Repaired", 10)
      << PadLeft("Comp", 8) << "\n";
  for (const auto& [lang, s] : summary.by_language) {
    out << Pad(DisplayName(lang), 12) << PadLeft(std::to_string(s.n), 10)
        << PadLeft(std::to_string(s.repaired), 10) << PadLeft(Fixed2(s.rate()), 8)
        << "\n";
  }
  out << "n=" << summary.n << " already=" << summary.already_compilable
      << " repaired=" << summary.repaired_count << " exhausted=" << summary.exhausted
      << " fixer_failed=" << summary.fixer_failed << "\n";
  return out.str();
}

std::string RenderKSweep(const KSweepReport& report) {
  std::ostringstream out;
  out << Pad("K", 4) << PadLeft("C", 8) << PadLeft("C++", 8) << "\n";
  for (const auto& row : report.rows) {
    out << Pad(std::to_string(row.k), 4);
    for (LangLabel lang : kSweepLanguages) {
      auto it = row.by_language.find(lang);
      std::string cell = "-";
      if (it != row.by_language.end()) {
        if (!it->second.valid) {
          cell = "invalid";
        } else if (it->second.summary.n > 0) {
          cell = Fixed2(it->second.summary.rate());
        }
      }
      out << PadLeft(cell, 8);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace codevet
