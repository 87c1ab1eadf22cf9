#include <atomic>
#include <cstdlib>
#include <string>

#include "mbverify/kernels.hpp"

namespace mbverify::kernels {
namespace {

Isa detect() {
  if (const char* forced = std::getenv("MBVERIFY_KERNEL")) {
    const std::string name(forced);
    if (name == "scalar") return Isa::scalar;
    if (name == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
    if (name == "neon" && isa_supported(Isa::neon)) return Isa::neon;
  }
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(MBVERIFY_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MBVERIFY_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error("kernel variant not available: " + std::string(isa_name(isa)));
  }
  selected().store(isa, std::memory_order_relaxed);
}

Complex sum(ComplexView a) {
  switch (active_isa()) {
#if defined(MBVERIFY_HAVE_AVX2)
    case Isa::avx2: return avx2::sum(a);
#endif
#if defined(MBVERIFY_HAVE_NEON)
    case Isa::neon: return neon::sum(a);
#endif
    default: return scalar::sum(a);
  }
}

Complex dot(ComplexView a, ComplexView b) {
  switch (active_isa()) {
#if defined(MBVERIFY_HAVE_AVX2)
    case Isa::avx2: return avx2::dot(a, b);
#endif
#if defined(MBVERIFY_HAVE_NEON)
    case Isa::neon: return neon::dot(a, b);
#endif
    default: return scalar::dot(a, b);
  }
}

Complex dot3(ComplexView a, ComplexView b, ComplexView c) {
  switch (active_isa()) {
#if defined(MBVERIFY_HAVE_AVX2)
    case Isa::avx2: return avx2::dot3(a, b, c);
#endif
#if defined(MBVERIFY_HAVE_NEON)
    case Isa::neon: return neon::dot3(a, b, c);
#endif
    default: return scalar::dot3(a, b, c);
  }
}

#if !defined(MBVERIFY_HAVE_AVX2)
namespace avx2 {
Complex sum(ComplexView) { throw Error("avx2 kernels not built"); }
Complex dot(ComplexView, ComplexView) { throw Error("avx2 kernels not built"); }
Complex dot3(ComplexView, ComplexView, ComplexView) { throw Error("avx2 kernels not built"); }
}  // namespace avx2
#endif

#if !defined(MBVERIFY_HAVE_NEON)
namespace neon {
Complex sum(ComplexView) { throw Error("neon kernels not built"); }
Complex dot(ComplexView, ComplexView) { throw Error("neon kernels not built"); }
Complex dot3(ComplexView, ComplexView, ComplexView) { throw Error("neon kernels not built"); }
}  // namespace neon
#endif

}  // namespace mbverify::kernels
