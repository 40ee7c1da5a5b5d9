#include <cstdlib>
#include <string>

#include "symaut/kernels.hpp"

namespace symaut::kernels {

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_eligible(std::size_t cols, std::uint32_t modulus) {
  if (modulus < 2) return false;
  const std::uint64_t top = static_cast<std::uint64_t>(modulus - 1) * (modulus - 1);
  return cols == 0 || top <= ((std::uint64_t{1} << 31) - 1) / cols;
}

Isa detect_isa() {
#if defined(__x86_64__) || defined(__i386__)
  if (avx2_compiled() && __builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa active_isa() {
  static const Isa chosen = [] {
    const char* forced = std::getenv("SYMAUT_KERNEL");
    if (forced != nullptr && std::string(forced) == "scalar") return Isa::Scalar;
    return detect_isa();
  }();
  return chosen;
}

void mod_matvec(const ModMatVecJob& job, Isa isa) {
  if (isa == Isa::Avx2 && detect_isa() == Isa::Avx2 && avx2_eligible(job.cols, job.modulus)) {
    mod_matvec_avx2(job);
    return;
  }
  mod_matvec_scalar(job);
}

}  // namespace symaut::kernels
