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

// JSON forms of the pipeline's records and reports. Readers throw
// std::invalid_argument on malformed documents.

#ifndef CODEVET_SERIALIZE_H
#define CODEVET_SERIALIZE_H

#include <string>

#include "codevet/compiler.h"
#include "codevet/diagnostics.h"
#include "codevet/forge.h"
#include "codevet/inject.h"
#include "codevet/langid.h"
#include "codevet/metrics.h"
#include "codevet/repair.h"
#include "json.hpp"

namespace codevet {

using Json = nlohmann::ordered_json;

Json ToJson(const Diagnostic& d);
Diagnostic DiagnosticFromJson(const Json& j);

// elapsed is included only when `with_timing` (it is wall-clock).
Json ToJson(const CompileOutcome& outcome, bool with_timing = false);
CompileOutcome CompileOutcomeFromJson(const Json& j);

Json ToJson(const MutationRecord& record);
MutationRecord MutationRecordFromJson(const Json& j);

// {"instruction", "input", "response", "meta": {...}}
Json ToJson(const InstructionRecord& record);
InstructionRecord InstructionRecordFromJson(const Json& j);

Json ToJson(const RepairTrace& trace, bool with_timing = false);
RepairTrace RepairTraceFromJson(const Json& j);

Json ToJson(const ForgeManifest& manifest);
Json ToJson(const CorpusReport& report);
Json ToJson(const ClassReport& report);
Json ToJson(const RepairSummary& summary);
Json ToJson(const KSweepReport& report);
Json ToJson(const LangScore& score);
Json ToJson(const MislabelReport& report);

}  // namespace codevet

#endif  // CODEVET_SERIALIZE_H
