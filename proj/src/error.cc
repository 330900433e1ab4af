// Copyright 2026 The Reqdrop Authors.
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

#include "reqdrop/error.h"

namespace reqdrop {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kIntegrity: return "integrity";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kGeneration: return "generation";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kTraining: return "training";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace reqdrop
