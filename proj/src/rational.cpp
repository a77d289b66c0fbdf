// Copyright 2026 The sysynth Authors
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

#include "sysynth/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace sysynth {

namespace {

[[noreturn]] void bad_decimal(const std::string& text) {
  throw std::invalid_argument("not a decimal number: '" + text + "'");
}

}  // namespace

Rat Rat::from_decimal(const std::string& text) {
  const char* p = text.c_str();
  bool neg = false;
  if (*p == '+' || *p == '-') {
    neg = (*p == '-');
    ++p;
  }
  __int128 mantissa = 0;
  int frac_digits = 0;
  bool any = false;
  for (; std::isdigit((unsigned char)*p); ++p) {
    mantissa = mantissa * 10 + (*p - '0');
    if (mantissa > (__int128)INT64_MAX * 1000) throw std::overflow_error("rational overflow");
    any = true;
  }
  if (*p == '.') {
    ++p;
    for (; std::isdigit((unsigned char)*p); ++p) {
      mantissa = mantissa * 10 + (*p - '0');
      if (mantissa > (__int128)INT64_MAX * 1000) throw std::overflow_error("rational overflow");
      ++frac_digits;
      any = true;
    }
  }
  if (!any) bad_decimal(text);
  long exp10 = 0;
  if (*p == 'e' || *p == 'E') {
    char* end = nullptr;
    exp10 = std::strtol(p + 1, &end, 10);
    if (end == p + 1) bad_decimal(text);
    p = end;
  }
  if (*p != '\0') bad_decimal(text);

  long shift = exp10 - frac_digits;
  __int128 num = neg ? -mantissa : mantissa;
  __int128 den = 1;
  while (shift > 0) {
    num *= 10;
    if (num > (__int128)INT64_MAX * 1000000 || num < -(__int128)INT64_MAX * 1000000)
      throw std::overflow_error("rational overflow");
    --shift;
  }
  while (shift < 0) {
    den *= 10;
    if (den > (__int128)INT64_MAX) throw std::overflow_error("rational overflow");
    ++shift;
  }
  Rat r;
  r.assign128(num, den);
  return r;
}

std::string Rat::to_string() const {
  // Extract the 2- and 5- factors of the denominator; anything left means
  // there is no finite decimal expansion.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int digits = twos > fives ? twos : fives;
  __int128 scaled = (__int128)(num_ < 0 ? -num_ : num_);
  for (int i = 0; i < digits - twos; ++i) scaled *= 2;
  for (int i = 0; i < digits - fives; ++i) scaled *= 5;

  std::string body;
  if (scaled == 0) body = "0";
  while (scaled > 0) {
    body.insert(body.begin(), (char)('0' + (int)(scaled % 10)));
    scaled /= 10;
  }
  if (digits > 0) {
    while ((int)body.size() <= digits) body.insert(body.begin(), '0');
    body.insert(body.size() - digits, ".");
    while (body.back() == '0') body.pop_back();
    if (body.back() == '.') body.pop_back();
  }
  if (num_ < 0) body.insert(body.begin(), '-');
  return body;
}

}  // namespace sysynth
