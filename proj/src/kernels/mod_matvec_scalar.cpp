#include "symaut/kernels.hpp"

namespace symaut::kernels {

void mod_matvec_scalar(const ModMatVecJob& job) {
  const std::uint64_t m = job.modulus;
  for (std::size_t r = 0; r < job.rows; ++r) {
    const std::uint32_t* row = job.matrix.data() + r * job.cols;
    std::uint32_t* out = job.output.data() + r * job.count;
    for (std::size_t v = 0; v < job.count; ++v) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < job.cols; ++c) {
        acc += static_cast<std::uint64_t>(row[c]) * job.input[c * job.count + v];
        if (acc >= (std::uint64_t{1} << 62)) acc %= m;
      }
      out[v] = static_cast<std::uint32_t>(acc % m);
    }
  }
}

}  // namespace symaut::kernels
