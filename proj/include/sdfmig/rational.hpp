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

#ifndef SDFMIG_RATIONAL_HPP
#define SDFMIG_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sdfmig {

/// Integer type used for rates, token counts and cycle counts.
using Int = std::int64_t;

/// Checked 64-bit helpers. Overflow throws std::overflow_error.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int gcd(Int a, Int b);
Int lcm(Int a, Int b);

/// Exact rational number, always stored reduced with a positive denominator.
///
/// Intermediate products are computed in 128 bits; a result that does not fit
/// back into 64 bits raises std::overflow_error rather than wrapping.
class Rational {
public:
    constexpr Rational() = default;
    Rational(Int value) : num_(value), den_(1) {} // NOLINT(implicit)
    Rational(Int num, Int den);

    Int num() const { return num_; }
    Int den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    /// Largest integer not greater than the value.
    Int floor() const;

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// Parses "12", "-3", "0.00406278", "100e6", "1.5E-3" or "7/3" exactly.
    /// Throws std::invalid_argument on malformed input.
    static Rational parse(std::string_view text);

    /// Canonical text: integer, terminating decimal when exact, else "num/den".
    std::string to_string() const;

    /// Decimal rendering rounded half away from zero to `precision` digits.
    std::string to_decimal(int precision) const;

private:
    Int num_ = 0;
    Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace sdfmig

#endif // SDFMIG_RATIONAL_HPP
