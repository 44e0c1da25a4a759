// Copyright 2026 The unsubx Authors
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
#pragma once

// JSON shapes shared by the HTTP API and the C API, so both report the
// same numbers in the same layout.

#include <nlohmann/json.hpp>

#include "unsubx/decisions.hpp"
#include "unsubx/filters.hpp"
#include "unsubx/metrics.hpp"
#include "unsubx/types.hpp"

namespace unsubx {

/// {"TRUE": {"titles", "dollars"}, "FALSE": ..., "MAYBE": ..., "BLANK": ..., "total": ...}
nlohmann::json to_json(const SummaryTable& table);

/// Record fields plus its derived metrics.
nlohmann::json to_json(const JournalRecord& rec, const RecordMetrics& m);

nlohmann::json to_json(const Warning& w);
nlohmann::json to_json(const std::vector<Warning>& warnings);
nlohmann::json to_json(const Weights& w);

/// {"price": {"min", "max"}, ...}
nlohmann::json to_json(const SliderBounds& bounds);

/// {"error": <ErrorCode name>, "message": ..., plus "column"/"line" where known}
nlohmann::json error_json(const Error& e);

}  // namespace unsubx
