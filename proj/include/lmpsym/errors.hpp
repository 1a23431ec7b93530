/*
 * Copyright 2026 The lmpsym Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LMPSYM_ERRORS_HPP
#define LMPSYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lmpsym {

/**
 * \brief Domain error with a stable machine-readable code.
 *
 * Codes used across the library:
 *   invalid-generator, unsupported-nesting, name-collision, no-witness,
 *   not-measurable, profile-violation, measurable-V, invalid-kernel,
 *   shape, label-mismatch, not-stable, too-many-regions, no-gap,
 *   unsupported-cospan, parse, range.
 */
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

inline void ensure(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace lmpsym

#endif  // LMPSYM_ERRORS_HPP
