#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace symaut::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Batched y = A x mod m over structure-of-arrays vectors:
/// input[c * count + v] is coordinate c of vector v, likewise output[r * count + v].
/// Matrix entries and inputs must already be reduced mod m.
struct ModMatVecJob {
  std::span<const std::uint32_t> matrix;  // rows x cols, row-major
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const std::uint32_t> input;
  std::span<std::uint32_t> output;
  std::size_t count = 0;
  std::uint32_t modulus = 0;
};

void mod_matvec_scalar(const ModMatVecJob& job);
void mod_matvec_avx2(const ModMatVecJob& job);

/// The 32-bit lane accumulator of the AVX2 path must not overflow.
bool avx2_eligible(std::size_t cols, std::uint32_t modulus);

bool avx2_compiled();
/// Best ISA supported by this CPU and build.
Isa detect_isa();
/// detect_isa() unless the environment sets SYMAUT_KERNEL=scalar.
Isa active_isa();

/// Runs the requested variant, falling back to scalar when it cannot apply.
void mod_matvec(const ModMatVecJob& job, Isa isa);

}  // namespace symaut::kernels
