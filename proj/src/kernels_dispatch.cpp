#include <cstdlib>
#include <string>

#include "latcount/error.hpp"
#include "latcount/kernels.hpp"

namespace latcount::kernels {

namespace {

constexpr Table kScalar{Variant::Scalar, &scalar::wick_cubic_row, &scalar::cubic_quartic,
                        &scalar::weighted_square_sum};

#if defined(LATCOUNT_HAVE_AVX2)
constexpr Table kAvx2{Variant::Avx2, &avx2::wick_cubic_row, &avx2::cubic_quartic,
                      &avx2::weighted_square_sum};
#endif

const Table& select_active() {
  if (const char* env = std::getenv("LATCOUNT_KERNELS")) {
    if (std::string(env) == "scalar") return kScalar;
  }
#if defined(LATCOUNT_HAVE_AVX2)
  if (supported(Variant::Avx2)) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::Scalar: return "scalar";
    case Variant::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Variant v) noexcept {
  switch (v) {
    case Variant::Scalar: return true;
    case Variant::Avx2:
#if defined(LATCOUNT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Variant> supported_variants() {
  std::vector<Variant> out;
  for (Variant v : {Variant::Scalar, Variant::Avx2})
    if (supported(v)) out.push_back(v);
  return out;
}

const Table& table(Variant v) {
  if (!supported(v))
    throw Error(ErrorKind::InvalidArgument, "kernel variant not available: " + std::string(to_string(v)));
#if defined(LATCOUNT_HAVE_AVX2)
  if (v == Variant::Avx2) return kAvx2;
#endif
  return kScalar;
}

const Table& active() {
  static const Table& chosen = select_active();
  return chosen;
}

}  // namespace latcount::kernels
