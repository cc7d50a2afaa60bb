// Copyright 2026 The Explor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace explor {

// Lowercase element names in document order.
using TagSequence = std::vector<std::string>;

// Extracts the name of every element start tag in `html_doc`, in document
// order, without filtering. The tokenizer never fails: comments, doctype,
// processing instructions and end tags are skipped, and the contents of
// raw-text elements (script, style, textarea, title, ...) are not scanned for
// markup. Elements the HTML tree builder would synthesize (an implied <html>
// or <tbody>) are not invented.
TagSequence extract_tag_sequence(std::string_view html_doc);

}  // namespace explor
