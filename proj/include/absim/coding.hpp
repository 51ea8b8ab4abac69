// Copyright 2026 the backscatter-sim authors
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
//
// Line codes mapping information bits to tag backscatter states. Chips are
// the states themselves: 0 = non-backscatter (effective channel h0),
// 1 = backscatter (h1). Both schemes emit exactly one 1 per chip pair.

#ifndef ABSIM_CODING_HPP
#define ABSIM_CODING_HPP

#include <stdexcept>
#include <vector>

namespace absim {

struct CodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A chip pair violates the line code: (0,0) or (1,1).
struct InvalidCodeError : CodingError {
  using CodingError::CodingError;
};

// Chip stream cannot be framed into symbols (odd length, missing preamble).
struct FramingError : CodingError {
  using CodingError::CodingError;
};

enum class CodeScheme { manchester, diff_manchester };

// First and second chip of one coded symbol.
struct ChipPair {
  int first = 1;
  int second = 0;
  friend bool operator==(ChipPair, ChipPair) = default;
};

inline constexpr ChipPair kPair10{1, 0};
inline constexpr ChipPair kPair01{0, 1};

struct ChipSequence {
  std::vector<int> chips;
  CodeScheme scheme = CodeScheme::manchester;
  ChipPair reference = kPair10;  // diff_manchester only
};

// bit 0 -> (1,0), bit 1 -> (0,1); output has 2 chips per input bit.
// Throws std::invalid_argument on non-bit input values.
ChipSequence manchester_encode(const std::vector<int>& bits);

// Inverse of manchester_encode. Throws FramingError on odd length,
// InvalidCodeError on a (0,0) or (1,1) pair.
std::vector<int> manchester_decode(const ChipSequence& seq);

// Differential scheme: symbol k repeats symbol k-1's pair for bit 0 and
// flips it for bit 1; the reference pair is prepended as a transmitted
// preamble symbol, so K bits produce K+1 pairs. reference must be (1,0)
// or (0,1).
ChipSequence diff_manchester_encode(const std::vector<int>& bits,
                                    ChipPair reference = kPair10);

// Inverse of diff_manchester_encode for either reference: bit k = 0 iff
// pair k equals pair k-1. Throws FramingError when the preamble is missing
// or length is odd, InvalidCodeError on a forbidden pair.
std::vector<int> diff_manchester_decode(const ChipSequence& seq);

}  // namespace absim

#endif  // ABSIM_CODING_HPP
