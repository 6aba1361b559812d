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

#ifndef LDAF_SERVER_HPP
#define LDAF_SERVER_HPP

#include "ldaf/ldaf.hpp"
#include "ldaf/server/app.hpp"
#include "ldaf/server/auth.hpp"
#include "ldaf/server/config.hpp"
#include "ldaf/server/http.hpp"
#include "ldaf/server/message.hpp"
#include "ldaf/server/negotiate.hpp"
#include "ldaf/server/resources.hpp"

#endif  // LDAF_SERVER_HPP
