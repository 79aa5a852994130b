// Copyright 2026 The sdfmig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef SDFMIG_ERRORS_HPP
#define SDFMIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdfmig {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Balance equations admit only the zero solution.
class InconsistentGraph : public Error {
public:
    using Error::Error;
};

/// Self-timed execution reached a state with nothing running and nothing enabled,
/// or a cycle carries no initial tokens.
class Deadlock : public Error {
public:
    using Error::Error;
};

class StateBudgetExceeded : public Error {
public:
    using Error::Error;
};

class NotHomogeneous : public Error {
public:
    using Error::Error;
};

class NotStronglyConnected : public Error {
public:
    using Error::Error;
};

class UnknownActor : public Error {
public:
    using Error::Error;
};

class UnknownChannel : public Error {
public:
    using Error::Error;
};

class UnmappedActor : public Error {
public:
    using Error::Error;
};

class SliceOverflow : public Error {
public:
    using Error::Error;
};

class BufferTooSmall : public Error {
public:
    using Error::Error;
};

class SameTile : public Error {
public:
    using Error::Error;
};

class AlreadyHardware : public Error {
public:
    using Error::Error;
};

} // namespace sdfmig

#endif // SDFMIG_ERRORS_HPP
