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

#ifndef HYPERNET_ERROR_HPP
#define HYPERNET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hypernet {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Topology parameters violate the family invariants.
class invalid_spec_error : public error {
public:
    using error::error;
};

/// An exact count does not fit in 64 unsigned bits.
class overflow_error : public error {
public:
    using error::error;
};

/// The operation is only defined for some topology families.
class unsupported_family_error : public error {
public:
    using error::error;
};

/// Graph construction or all-pairs evaluation exceeds the configured cap.
class size_error : public error {
public:
    using error::error;
};

/// An operation needs integral parameters but got a fractional ring size.
class mode_error : public error {
public:
    using error::error;
};

/// Inconsistent arguments supplied by the caller.
class usage_error : public error {
public:
    using error::error;
};

} // namespace hypernet

#endif
