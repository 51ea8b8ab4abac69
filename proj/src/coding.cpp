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

#include "absim/coding.hpp"

namespace absim {

namespace {

void check_bits(const std::vector<int>& bits) {
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("encode: input values must be bits");
    }
  }
}

void check_reference(ChipPair p) {
  if (p != kPair10 && p != kPair01) {
    throw std::invalid_argument(
        "diff_manchester_encode: reference must be (1,0) or (0,1)");
  }
}

ChipPair flipped(ChipPair p) { return {p.second, p.first}; }

ChipPair pair_at(const std::vector<int>& chips, std::size_t symbol) {
  return {chips[2 * symbol], chips[2 * symbol + 1]};
}

void check_pair(ChipPair p) {
  if (p != kPair10 && p != kPair01) {
    throw InvalidCodeError("decode: chip pair must be (1,0) or (0,1)");
  }
}

}  // namespace

ChipSequence manchester_encode(const std::vector<int>& bits) {
  check_bits(bits);
  ChipSequence seq;
  seq.scheme = CodeScheme::manchester;
  seq.chips.reserve(2 * bits.size());
  for (int b : bits) {
    const ChipPair p = (b == 0) ? kPair10 : kPair01;
    seq.chips.push_back(p.first);
    seq.chips.push_back(p.second);
  }
  return seq;
}

std::vector<int> manchester_decode(const ChipSequence& seq) {
  if (seq.chips.size() % 2 != 0) {
    throw FramingError("manchester_decode: odd chip count");
  }
  std::vector<int> bits;
  bits.reserve(seq.chips.size() / 2);
  for (std::size_t k = 0; k < seq.chips.size() / 2; ++k) {
    const ChipPair p = pair_at(seq.chips, k);
    check_pair(p);
    bits.push_back(p == kPair01 ? 1 : 0);
  }
  return bits;
}

ChipSequence diff_manchester_encode(const std::vector<int>& bits,
                                    ChipPair reference) {
  check_bits(bits);
  check_reference(reference);
  ChipSequence seq;
  seq.scheme = CodeScheme::diff_manchester;
  seq.reference = reference;
  seq.chips.reserve(2 * (bits.size() + 1));
  ChipPair prev = reference;
  seq.chips.push_back(prev.first);
  seq.chips.push_back(prev.second);
  for (int b : bits) {
    const ChipPair cur = (b == 0) ? prev : flipped(prev);
    seq.chips.push_back(cur.first);
    seq.chips.push_back(cur.second);
    prev = cur;
  }
  return seq;
}

std::vector<int> diff_manchester_decode(const ChipSequence& seq) {
  if (seq.chips.size() % 2 != 0) {
    throw FramingError("diff_manchester_decode: odd chip count");
  }
  if (seq.chips.size() < 2) {
    throw FramingError("diff_manchester_decode: missing preamble symbol");
  }
  const std::size_t symbols = seq.chips.size() / 2;
  std::vector<int> bits;
  bits.reserve(symbols - 1);
  ChipPair prev = pair_at(seq.chips, 0);
  check_pair(prev);
  for (std::size_t k = 1; k < symbols; ++k) {
    const ChipPair cur = pair_at(seq.chips, k);
    check_pair(cur);
    bits.push_back(cur == prev ? 0 : 1);
    prev = cur;
  }
  return bits;
}

}  // namespace absim
