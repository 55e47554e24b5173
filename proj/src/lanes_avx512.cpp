// AVX-512F realization of the lane primitives. Functions carry a target
// attribute instead of building the unit with -mavx512f, so inline code from
// shared headers is never emitted with AVX-512 instructions. Callers reach
// these only after hardware_available().

#include "iwpp/lanes.hpp"

#include <stdexcept>

#if defined(IWPP_HAVE_AVX512)
#include <immintrin.h>
#define IWPP_AVX512 __attribute__((target("avx512f,popcnt")))
#endif

namespace iwpp::lanes {

#if defined(IWPP_HAVE_AVX512)

namespace {

IWPP_AVX512 inline __m512i load(const LaneBatch& b) { return _mm512_loadu_si512(b.lane.data()); }

IWPP_AVX512 inline LaneBatch store(__m512i v) {
  LaneBatch out;
  _mm512_storeu_si512(out.lane.data(), v);
  return out;
}

IWPP_AVX512 inline __m512i offset_vector(const Neighborhood& nb) {
  alignas(64) std::int32_t offs[16] = {};
  const auto o = nb.offsets();
  for (std::size_t i = 0; i < o.size(); ++i) offs[i] = static_cast<std::int32_t>(o[i]);
  return _mm512_load_si512(offs);
}

IWPP_AVX512 inline __m512i dual_offset_vector(const Neighborhood& nb) {
  alignas(64) std::int32_t offs[16] = {};
  const auto o = nb.offsets();
  for (std::size_t i = 0; i < o.size() && i < 8; ++i) {
    offs[i] = static_cast<std::int32_t>(o[i]);
    offs[i + 8] = static_cast<std::int32_t>(o[i]);
  }
  return _mm512_load_si512(offs);
}

// Lane i takes lane i - k; lanes below k are zeroed.
IWPP_AVX512 inline __m512i shift_up(__m512i v, int k) {
  const __m512i idx = _mm512_sub_epi32(
      _mm512_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15), _mm512_set1_epi32(k));
  const __mmask16 keep = static_cast<__mmask16>(0xFFFFu << k);
  return _mm512_maskz_permutexvar_epi32(keep, idx, v);
}

IWPP_AVX512 inline __m512i prefix8(LaneMask m) {
  __m512i acc = _mm512_maskz_set1_epi32(m.bits, 1);
  acc = _mm512_add_epi32(acc, shift_up(acc, 1));
  acc = _mm512_add_epi32(acc, shift_up(acc, 2));
  acc = _mm512_add_epi32(acc, shift_up(acc, 4));
  return acc;
}

}  // namespace

IWPP_AVX512 LaneBatch HardwareBackend::shift_offsets(Addr base, const Neighborhood& nb) {
  return store(_mm512_add_epi32(_mm512_set1_epi32(static_cast<int>(base)), offset_vector(nb)));
}

IWPP_AVX512 LaneBatch HardwareBackend::shift_offsets_dual(Addr p1, Addr p2, const Neighborhood& nb) {
  const __m512i bases = _mm512_mask_blend_epi32(0xFF00, _mm512_set1_epi32(static_cast<int>(p1)),
                                                _mm512_set1_epi32(static_cast<int>(p2)));
  return store(_mm512_add_epi32(bases, dual_offset_vector(nb)));
}

IWPP_AVX512 LaneBatch HardwareBackend::gather(std::span<const std::uint32_t> data, const LaneBatch& addrs) {
#if defined(IWPP_CONTRACT_CHECKS) && IWPP_CONTRACT_CHECKS
  for (std::size_t i = 0; i < kLaneCount; ++i) {
    IWPP_EXPECTS(addrs[i] < data.size(), "gather: address out of bounds");
  }
#endif
  return store(_mm512_i32gather_epi32(load(addrs), data.data(), 4));
}

IWPP_AVX512 LaneMask HardwareBackend::cmp_mask(const LaneBatch& a, const LaneBatch& b, Relation rel) {
  const __m512i va = load(a);
  const __m512i vb = load(b);
  switch (rel) {
    case Relation::kLess: return {_mm512_cmplt_epu32_mask(va, vb)};
    case Relation::kGreater: return {_mm512_cmpgt_epu32_mask(va, vb)};
    case Relation::kNotEqual: return {_mm512_cmpneq_epu32_mask(va, vb)};
  }
  return {};
}

IWPP_AVX512 std::uint8_t HardwareBackend::popcount(LaneMask m) {
  return static_cast<std::uint8_t>(_mm_popcnt_u32(m.bits));
}

IWPP_AVX512 LaneBatch HardwareBackend::prefix_sum8(LaneMask m) { return store(prefix8(m)); }

IWPP_AVX512 LaneBatch HardwareBackend::prefix_sum16(LaneMask m) {
  const __m512i acc = prefix8(m);
  return store(_mm512_add_epi32(acc, shift_up(acc, 8)));
}

IWPP_AVX512 std::uint32_t HardwareBackend::reduce_extremum(const LaneBatch& v, LaneMask m, Direction dir,
                                               std::uint32_t identity) {
  if (m.bits == 0) return identity;
  return dir == Direction::kMax ? _mm512_mask_reduce_max_epu32(m.bits, load(v))
                                : _mm512_mask_reduce_min_epu32(m.bits, load(v));
}

IWPP_AVX512 LaneBatch HardwareBackend::combine(const LaneBatch& a, const LaneBatch& b, Direction dir) {
  return store(dir == Direction::kMax ? _mm512_max_epu32(load(a), load(b))
                                      : _mm512_min_epu32(load(a), load(b)));
}

#else  // no AVX-512 at build time

namespace {
[[noreturn]] void unavailable() {
  throw std::runtime_error("hardware lane backend not built");
}
}  // namespace

LaneBatch HardwareBackend::shift_offsets(Addr, const Neighborhood&) { unavailable(); }
LaneBatch HardwareBackend::shift_offsets_dual(Addr, Addr, const Neighborhood&) { unavailable(); }
LaneBatch HardwareBackend::gather(std::span<const std::uint32_t>, const LaneBatch&) { unavailable(); }
LaneMask HardwareBackend::cmp_mask(const LaneBatch&, const LaneBatch&, Relation) { unavailable(); }
std::uint8_t HardwareBackend::popcount(LaneMask) { unavailable(); }
LaneBatch HardwareBackend::prefix_sum8(LaneMask) { unavailable(); }
LaneBatch HardwareBackend::prefix_sum16(LaneMask) { unavailable(); }
std::uint32_t HardwareBackend::reduce_extremum(const LaneBatch&, LaneMask, Direction, std::uint32_t) {
  unavailable();
}
LaneBatch HardwareBackend::combine(const LaneBatch&, const LaneBatch&, Direction) { unavailable(); }

#endif

}  // namespace iwpp::lanes
