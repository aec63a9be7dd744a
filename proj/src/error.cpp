// Copyright 2026 The divconst Authors
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

#include "divconst/error.hpp"

namespace divconst {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_divisor:
      return "invalid-divisor";
    case Errc::out_of_range:
      return "out-of-range";
    case Errc::unsupported_variant:
      return "unsupported-variant";
    case Errc::unsupported_width:
      return "unsupported-width";
    case Errc::invalid_domain:
      return "invalid-domain";
    case Errc::parse_error:
      return "parse-error";
    case Errc::unknown_mnemonic:
      return "unknown-mnemonic";
    case Errc::duplicate_entry:
      return "duplicate-entry";
    case Errc::lowering_invariant:
      return "lowering-invariant";
    case Errc::bench_checksum:
      return "bench-checksum";
  }
  return "unknown";
}

}  // namespace divconst
