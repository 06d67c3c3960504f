// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hypernet Authors
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

#ifndef HYPERNET_HYPERNET_HPP
#define HYPERNET_HYPERNET_HPP

#include <hypernet/demand.hpp>
#include <hypernet/error.hpp>
#include <hypernet/graph_oracle.hpp>
#include <hypernet/routing_sim.hpp>
#include <hypernet/topology.hpp>

#endif
