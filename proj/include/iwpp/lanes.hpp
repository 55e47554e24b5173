#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

#include "iwpp/contract.hpp"
#include "iwpp/grid.hpp"

namespace iwpp::lanes {

inline constexpr std::size_t kLaneCount = 16;

/// Sixteen 32-bit lanes; models one 512-bit vector register.
struct LaneBatch {
  std::array<std::uint32_t, kLaneCount> lane{};

  static LaneBatch broadcast(std::uint32_t v) {
    LaneBatch b;
    b.lane.fill(v);
    return b;
  }
  std::uint32_t operator[](std::size_t i) const { return lane[i]; }
  std::uint32_t& operator[](std::size_t i) { return lane[i]; }
  friend bool operator==(const LaneBatch&, const LaneBatch&) = default;
};

/// One bit per lane; bit i belongs to lane i.
struct LaneMask {
  std::uint16_t bits = 0;

  bool test(std::size_t i) const { return (bits >> i) & 1u; }
  friend LaneMask operator&(LaneMask a, LaneMask b) {
    return {static_cast<std::uint16_t>(a.bits & b.bits)};
  }
  friend LaneMask operator|(LaneMask a, LaneMask b) {
    return {static_cast<std::uint16_t>(a.bits | b.bits)};
  }
  friend bool operator==(LaneMask, LaneMask) = default;
};

inline constexpr LaneMask kLowHalf{0x00FF};
inline constexpr LaneMask kHighHalf{0xFF00};

enum class Relation { kLess, kGreater, kNotEqual };

/// Portable reference implementation of every lane primitive. It is always
/// built and serves as the oracle for the hardware backend.
struct ScalarBackend {
  static constexpr const char* kName = "scalar";

  /// Lane i = base + offsets[i]; lanes past the neighborhood repeat base.
  static LaneBatch shift_offsets(Addr base, const Neighborhood& nb) {
    LaneBatch out = LaneBatch::broadcast(base);
    const auto offs = nb.offsets();
    for (std::size_t i = 0; i < offs.size(); ++i) out[i] = static_cast<Addr>(base + offs[i]);
    return out;
  }

  /// Neighborhood of p1 in lanes 0-7 and of p2 in lanes 8-15.
  static LaneBatch shift_offsets_dual(Addr p1, Addr p2, const Neighborhood& nb) {
    LaneBatch out;
    const auto offs = nb.offsets();
    for (std::size_t i = 0; i < 8; ++i) {
      out[i] = i < offs.size() ? static_cast<Addr>(p1 + offs[i]) : p1;
      out[i + 8] = i < offs.size() ? static_cast<Addr>(p2 + offs[i]) : p2;
    }
    return out;
  }

  static LaneBatch gather(std::span<const std::uint32_t> data, const LaneBatch& addrs) {
    LaneBatch out;
    for (std::size_t i = 0; i < kLaneCount; ++i) {
      IWPP_DEBUG_EXPECTS(addrs[i] < data.size(), "gather: address out of bounds");
      out[i] = data[addrs[i]];
    }
    return out;
  }

  static LaneMask cmp_mask(const LaneBatch& a, const LaneBatch& b, Relation rel) {
    std::uint16_t bits = 0;
    for (std::size_t i = 0; i < kLaneCount; ++i) {
      bool hit = false;
      switch (rel) {
        case Relation::kLess: hit = a[i] < b[i]; break;
        case Relation::kGreater: hit = a[i] > b[i]; break;
        case Relation::kNotEqual: hit = a[i] != b[i]; break;
      }
      bits = static_cast<std::uint16_t>(bits | (std::uint16_t{hit} << i));
    }
    return {bits};
  }

  static std::uint8_t popcount(LaneMask m) {
    return static_cast<std::uint8_t>(std::popcount(m.bits));
  }

  /// Inclusive prefix count of mask bits 0..i in lanes 0-7, built from one
  /// broadcast and three shift-by-{1,2,4}-and-add rounds. Lanes 8-15 hold the
  /// same rounds' output: the count of set bits among i-7..i.
  static LaneBatch prefix_sum8(LaneMask m) {
    LaneBatch acc = spread_bits(m);
    for (std::size_t shift : {1u, 2u, 4u}) acc = add(acc, shift_up(acc, shift));
    return acc;
  }

  /// Inclusive prefix count over all 16 lanes: the three rounds above plus a
  /// shift-by-8 round.
  static LaneBatch prefix_sum16(LaneMask m) {
    LaneBatch acc = prefix_sum8(m);
    return add(acc, shift_up(acc, 8));
  }

  /// Extremum over lanes whose mask bit is set, or `identity` when none are.
  static std::uint32_t reduce_extremum(const LaneBatch& v, LaneMask m, Direction dir,
                                       std::uint32_t identity) {
    if (m.bits == 0) return identity;
    std::uint32_t best = dir == Direction::kMax ? 0u : 0xFFFFFFFFu;
    for (std::size_t i = 0; i < kLaneCount; ++i) {
      if (!m.test(i)) continue;
      best = dir == Direction::kMax ? (v[i] > best ? v[i] : best) : (v[i] < best ? v[i] : best);
    }
    return best;
  }

  /// Lane-wise max or min of two batches.
  static LaneBatch combine(const LaneBatch& a, const LaneBatch& b, Direction dir) {
    LaneBatch out;
    for (std::size_t i = 0; i < kLaneCount; ++i) {
      out[i] = dir == Direction::kMax ? (a[i] > b[i] ? a[i] : b[i]) : (a[i] < b[i] ? a[i] : b[i]);
    }
    return out;
  }

  // Building blocks of the prefix sum, public for tests.
  static LaneBatch spread_bits(LaneMask m) {
    LaneBatch out;
    for (std::size_t i = 0; i < kLaneCount; ++i) out[i] = m.test(i) ? 1u : 0u;
    return out;
  }
  /// Moves lane i to lane i + k; vacated low lanes become 0.
  static LaneBatch shift_up(const LaneBatch& v, std::size_t k) {
    LaneBatch out;
    for (std::size_t i = k; i < kLaneCount; ++i) out[i] = v[i - k];
    return out;
  }
  static LaneBatch add(const LaneBatch& a, const LaneBatch& b) {
    LaneBatch out;
    for (std::size_t i = 0; i < kLaneCount; ++i) out[i] = a[i] + b[i];
    return out;
  }
};

/// AVX-512F backend; callable only when hardware_available() is true.
struct HardwareBackend {
  static constexpr const char* kName = "avx512";

  static LaneBatch shift_offsets(Addr base, const Neighborhood& nb);
  static LaneBatch shift_offsets_dual(Addr p1, Addr p2, const Neighborhood& nb);
  static LaneBatch gather(std::span<const std::uint32_t> data, const LaneBatch& addrs);
  static LaneMask cmp_mask(const LaneBatch& a, const LaneBatch& b, Relation rel);
  static std::uint8_t popcount(LaneMask m);
  static LaneBatch prefix_sum8(LaneMask m);
  static LaneBatch prefix_sum16(LaneMask m);
  static std::uint32_t reduce_extremum(const LaneBatch& v, LaneMask m, Direction dir,
                                       std::uint32_t identity);
  static LaneBatch combine(const LaneBatch& a, const LaneBatch& b, Direction dir);
};

/// True when the library was built with the AVX-512 unit and the CPU has it.
bool hardware_available();

enum class Backend { kAuto, kScalar, kHardware };

/// kAuto resolves to kHardware when available, else kScalar. Requesting
/// kHardware on a machine without it throws std::runtime_error.
Backend resolve(Backend requested);
const char* backend_name(Backend b);

// Free-function surface over the scalar reference.
inline LaneBatch shift_offsets(Addr base, const Neighborhood& nb) {
  return ScalarBackend::shift_offsets(base, nb);
}
inline LaneBatch gather(const Image2D& img, const LaneBatch& addrs) {
  return ScalarBackend::gather(img.data(), addrs);
}
inline LaneMask cmp_mask(const LaneBatch& a, const LaneBatch& b, Relation rel) {
  return ScalarBackend::cmp_mask(a, b, rel);
}
inline std::uint8_t popcount(LaneMask m) { return ScalarBackend::popcount(m); }
inline LaneBatch prefix_sum8(LaneMask m) { return ScalarBackend::prefix_sum8(m); }
inline LaneBatch prefix_sum16(LaneMask m) { return ScalarBackend::prefix_sum16(m); }
inline std::uint32_t reduce_extremum(const LaneBatch& v, LaneMask m, Direction dir,
                                     std::uint32_t identity) {
  return ScalarBackend::reduce_extremum(v, m, dir, identity);
}

}  // namespace iwpp::lanes
