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

#include "sdfmig/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sdfmig {

namespace {

__extension__ typedef __int128 Wide;

Int narrow(Wide v) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
        throw std::overflow_error("sdfmig: 64-bit integer overflow");
    }
    return static_cast<Int>(v);
}

Wide wide_gcd(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make_reduced(Wide num, Wide den) {
    if (den == 0) throw std::domain_error("sdfmig: division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide g = wide_gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational(narrow(num), narrow(den));
}

Wide pow10(int e) {
    Wide r = 1;
    for (int i = 0; i < e; ++i) {
        r *= 10;
        if (r > std::numeric_limits<Int>::max()) throw std::overflow_error("sdfmig: exponent too large");
    }
    return r;
}

} // namespace

Int checked_add(Int a, Int b) { return narrow(static_cast<Wide>(a) + b); }
Int checked_mul(Int a, Int b) { return narrow(static_cast<Wide>(a) * b); }

Int gcd(Int a, Int b) { return narrow(wide_gcd(a, b)); }

Int lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    Int g = gcd(a, b);
    return checked_mul(a / g, b < 0 ? -b : b);
}

Rational::Rational(Int num, Int den) {
    if (den == 0) throw std::domain_error("sdfmig: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int g = gcd(num, den);
    num_ = g > 1 ? num / g : num;
    den_ = g > 1 ? den / g : den;
}

Int Rational::floor() const {
    Int q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

Rational Rational::operator-() const { return make_reduced(-static_cast<Wide>(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                        static_cast<Wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    return make_reduced(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("sdfmig: division by zero");
    return make_reduced(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed number '" + std::string(text) + "'"); };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational n = parse(text.substr(0, slash));
        Rational d = parse(text.substr(slash + 1));
        if (!n.is_integer() || !d.is_integer() || d.is_zero()) fail();
        return Rational(n.num(), d.num());
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    Wide mantissa = 0;
    int frac_digits = 0;
    bool any_digit = false;
    bool in_fraction = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * 10 + (c - '0');
            if (mantissa > std::numeric_limits<Int>::max()) throw std::overflow_error("sdfmig: number too large");
            if (in_fraction) ++frac_digits;
            any_digit = true;
        } else if (c == '.' && !in_fraction) {
            in_fraction = true;
        } else {
            break;
        }
    }
    if (!any_digit) fail();
    int exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') fail();
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        if (i == text.size()) fail();
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 40) throw std::overflow_error("sdfmig: exponent too large");
        }
        if (exp_negative) exponent = -exponent;
    }
    exponent -= frac_digits;
    Wide num = negative ? -mantissa : mantissa;
    Wide den = 1;
    if (exponent > 0) {
        num *= pow10(exponent);
    } else if (exponent < 0) {
        den = pow10(-exponent);
    }
    return make_reduced(num, den);
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    Int d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    int digits = std::max(twos, fives);
    if (d != 1 || digits > 18) return std::to_string(num_) + "/" + std::to_string(den_);
    return to_decimal(digits);
}

std::string Rational::to_decimal(int precision) const {
    if (precision < 0) precision = 0;
    Wide scale = pow10(precision);
    Wide n = static_cast<Wide>(num_) * scale;
    bool negative = n < 0;
    if (negative) n = -n;
    Wide q = n / den_;
    Wide r = n % den_;
    if (2 * r >= den_) ++q;
    Wide int_part = q / scale;
    Wide frac_part = q % scale;
    std::string out = (negative && q != 0) ? "-" : "";
    out += std::to_string(static_cast<long long>(int_part));
    if (precision > 0) {
        std::string frac = std::to_string(static_cast<long long>(frac_part));
        out += '.';
        out += std::string(static_cast<std::size_t>(precision) - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace sdfmig
