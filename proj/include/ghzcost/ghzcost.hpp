// Copyright 2026 The ghzcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GHZCOST_GHZCOST_HPP
#define GHZCOST_GHZCOST_HPP

#include "ghzcost/basis.hpp"
#include "ghzcost/discord.hpp"
#include "ghzcost/error.hpp"
#include "ghzcost/hilbert.hpp"
#include "ghzcost/presets.hpp"
#include "ghzcost/protocol.hpp"
#include "ghzcost/rates.hpp"
#include "ghzcost/typical.hpp"

#endif
