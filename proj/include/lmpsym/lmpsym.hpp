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

#ifndef LMPSYM_LMPSYM_HPP
#define LMPSYM_LMPSYM_HPP

#include "lmpsym/bisim.hpp"
#include "lmpsym/certificate.hpp"
#include "lmpsym/enumeration.hpp"
#include "lmpsym/errors.hpp"
#include "lmpsym/gallery.hpp"
#include "lmpsym/intervals.hpp"
#include "lmpsym/json_io.hpp"
#include "lmpsym/lmp.hpp"
#include "lmpsym/logic.hpp"
#include "lmpsym/measure.hpp"
#include "lmpsym/partition.hpp"
#include "lmpsym/rational.hpp"
#include "lmpsym/sigma.hpp"

#endif  // LMPSYM_LMPSYM_HPP
