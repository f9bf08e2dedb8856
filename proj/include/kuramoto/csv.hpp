/*
 * Copyright (c) 2026 kuramoto-hebb contributors
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

#ifndef KURAMOTO_CSV_HPP
#define KURAMOTO_CSV_HPP

#include <charconv>
#include <ostream>
#include <string>

namespace kuramoto::io {

/// Shortest round-trip decimal representation, locale independent
/// ('.' decimal separator regardless of environment).
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

inline void put_double(std::ostream& os, double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    os.write(buf, ptr - buf);
}

} // namespace kuramoto::io

#endif
