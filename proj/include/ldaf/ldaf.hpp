/*
 * Copyright 2026 The LDAF Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LDAF_LDAF_HPP
#define LDAF_LDAF_HPP

#include "ldaf/converter/converter.hpp"
#include "ldaf/converter/keymap.hpp"
#include "ldaf/converter/resource_object.hpp"
#include "ldaf/query/evaluate.hpp"
#include "ldaf/query/query.hpp"
#include "ldaf/rdf/graph.hpp"
#include "ldaf/rdf/store.hpp"
#include "ldaf/rdf/term.hpp"
#include "ldaf/rdf/turtle.hpp"
#include "ldaf/template/template.hpp"

#endif  // LDAF_LDAF_HPP
