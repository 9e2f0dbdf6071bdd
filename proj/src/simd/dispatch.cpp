// Copyright 2026 The Frugal Authors
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

#include <cstdlib>
#include <string_view>

#include "frugal/kernels.hpp"

namespace frugal::simd {

namespace {

struct KernelTable {
  Isa isa;
  void (*frugal1u)(std::span<std::int64_t>, std::span<const std::int64_t>,
                   std::span<const double>, const QuantileSpec&);
  void (*frugal2u)(Frugal2ULaneView, std::span<const std::int64_t>, std::span<const double>,
                   const QuantileSpec&);
  std::uint64_t (*count_less)(std::span<const std::int64_t>, std::int64_t);
};

KernelTable make_table() {
  KernelTable t{Isa::kScalar, scalar::frugal1u_lanes, scalar::frugal2u_lanes,
                scalar::count_less};
  const char* force = std::getenv("FRUGAL_SIMD");
  if (force != nullptr && std::string_view(force) == "scalar") {
    return t;
  }
#if FRUGAL_HAVE_AVX2_KERNELS
  if (detected_isa() == Isa::kAvx2) {
    t = {Isa::kAvx2, avx2::frugal1u_lanes, avx2::frugal2u_lanes, avx2::count_less};
  }
#endif
  return t;
}

const KernelTable& table() {
  static const KernelTable t = make_table();
  return t;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
#if FRUGAL_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
  static const bool has_avx2 = __builtin_cpu_supports("avx2");
  if (has_avx2) {
    return Isa::kAvx2;
  }
#endif
  return Isa::kScalar;
}

Isa active_isa() { return table().isa; }

void frugal1u_lanes(std::span<std::int64_t> estimates, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q) {
  table().frugal1u(estimates, items, rands, q);
}

void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q) {
  table().frugal2u(lanes, items, rands, q);
}

std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x) {
  return table().count_less(values, x);
}

}  // namespace frugal::simd
