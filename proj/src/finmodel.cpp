#include "symaut/finmodel.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "symaut/error.hpp"

namespace symaut {

namespace {

std::uint32_t reduce(const Integer& value, std::uint32_t m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), m);
  return static_cast<std::uint32_t>(r.get_ui());
}

// m^k, or nothing when it exceeds limit.
std::optional<std::uint64_t> bounded_power(std::uint64_t m, std::size_t k, std::uint64_t limit) {
  std::uint64_t value = 1;
  for (std::size_t t = 0; t < k; ++t) {
    if (value > limit / m) return std::nullopt;
    value *= m;
  }
  return value;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_budget(const char* check, std::optional<std::uint64_t> work, std::uint64_t budget) {
  if (!work || *work > budget)
    throw Error(ErrorCode::BudgetExceeded,
                std::string(check) + " needs more than " + std::to_string(budget) + " evaluations; use sampling");
}

// Flat tuple layout: coordinate k of point p sits at p * d + k.
class Enumerator {
 public:
  Enumerator(std::size_t d, std::size_t n, std::uint32_t m) : d_(d), n_(n), m_(m) {}

  void decode(std::uint64_t index, std::uint32_t* flat) const {
    for (std::size_t t = 0; t < d_ * n_; ++t) {
      flat[t] = static_cast<std::uint32_t>(index % m_);
      index /= m_;
    }
  }

  ModelTuple to_tuple(const std::uint32_t* flat) const {
    ModelTuple out(n_);
    for (std::size_t p = 0; p < n_; ++p) out[p].coords.assign(flat + p * d_, flat + (p + 1) * d_);
    return out;
  }

  std::size_t width() const { return d_ * n_; }

 private:
  std::size_t d_, n_;
  std::uint32_t m_;
};

// Applies the block matrix to a batch of flat tuples (array-of-structs in and out).
class BatchEvaluator {
 public:
  BatchEvaluator(std::vector<std::uint32_t> block, std::size_t width, std::uint32_t m, kernels::Isa isa)
      : block_(std::move(block)), width_(width), m_(m), isa_(isa) {}

  void run(const std::vector<std::uint32_t>& tuples, std::vector<std::uint32_t>& images) {
    const std::size_t count = tuples.size() / width_;
    soa_in_.resize(tuples.size());
    soa_out_.resize(tuples.size());
    for (std::size_t v = 0; v < count; ++v)
      for (std::size_t c = 0; c < width_; ++c) soa_in_[c * count + v] = tuples[v * width_ + c];
    kernels::ModMatVecJob job{block_, width_, width_, soa_in_, soa_out_, count, m_};
    kernels::mod_matvec(job, isa_);
    images.resize(tuples.size());
    for (std::size_t v = 0; v < count; ++v)
      for (std::size_t r = 0; r < width_; ++r) images[v * width_ + r] = soa_out_[r * count + v];
  }

 private:
  std::vector<std::uint32_t> block_;
  std::size_t width_;
  std::uint32_t m_;
  kernels::Isa isa_;
  std::vector<std::uint32_t> soa_in_, soa_out_;
};

bool points_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t d) {
  return std::equal(a, a + d, b);
}

// Points of a flat tuple sorted lexicographically, as pointers into the tuple.
void sorted_points(const std::uint32_t* flat, std::size_t n, std::size_t d, std::vector<const std::uint32_t*>& out) {
  out.resize(n);
  for (std::size_t p = 0; p < n; ++p) out[p] = flat + p * d;
  std::sort(out.begin(), out.end(), [d](const std::uint32_t* a, const std::uint32_t* b) {
    return std::lexicographical_compare(a, a + d, b, b + d);
  });
}

bool flat_in_big_diagonal(const std::uint32_t* flat, std::size_t n, std::size_t d) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (points_equal(flat + a * d, flat + b * d, d)) return true;
  return false;
}

bool flat_in_delta_prime(const std::uint32_t* flat, std::size_t n, std::size_t d) {
  for (std::size_t skip = 0; skip < n; ++skip) {
    const std::size_t ref = (skip == 0) ? 1 : 0;
    bool all_equal = true;
    for (std::size_t p = 0; p < n && all_equal; ++p)
      if (p != skip) all_equal = points_equal(flat + p * d, flat + ref * d, d);
    if (all_equal) return true;
  }
  return false;
}

void permute_flat(const Permutation& tau, const std::uint32_t* x, std::uint32_t* out, std::size_t d) {
  for (std::size_t p = 0; p < tau.size(); ++p) std::copy(x + p * d, x + (p + 1) * d, out + tau(p) * d);
}

ModelReport base_report(const char* check, const FiniteModel& model, const OrderMatrix& m, const CheckOptions* options) {
  ModelReport r;
  r.check = check;
  r.modulus = model.modulus();
  r.degree = model.degree();
  r.n = m.size();
  r.minpoly = model.order().minpoly();
  if (options == nullptr) {
    r.mode = "exhaustive";
  } else if (options->mode.kind == CheckMode::Kind::Exhaustive) {
    r.mode = "exhaustive";
  } else {
    r.mode = "sample";
    r.seed = options->mode.seed;
  }
  return r;
}

void require_compatible(const FiniteModel& model, const OrderMatrix& m) {
  if (!(model.order() == m.order())) throw Error(ErrorCode::InvalidArgument, "matrix and model use different orders");
}

// Shared driver for the diagonal-type checks: tuples drawn from a subset S must map into S.
template <typename Member, typename Sampler>
ModelReport check_subset_preserved(ModelReport report, const FiniteModel& model, const OrderMatrix& m,
                                   const CheckOptions& options, Member member, Sampler sampler) {
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  const Enumerator space(d, n, model.modulus());
  const std::size_t width = space.width();
  BatchEvaluator eval(model.block_action_matrix(m), width, model.modulus(), options.isa);

  constexpr std::size_t kBlock = 4096;
  std::vector<std::uint32_t> batch, images;
  batch.reserve(kBlock * width);
  auto flush = [&]() -> bool {
    eval.run(batch, images);
    const std::size_t count = batch.size() / width;
    for (std::size_t v = 0; v < count; ++v) {
      ++report.examined;
      if (!member(images.data() + v * width, n, d)) {
        report.counterexample = Counterexample{space.to_tuple(batch.data() + v * width), std::nullopt,
                                               space.to_tuple(images.data() + v * width), {}};
        return false;
      }
    }
    batch.clear();
    return true;
  };

  std::vector<std::uint32_t> flat(width);
  if (options.mode.kind == CheckMode::Kind::Exhaustive) {
    const auto total = bounded_power(model.modulus(), width, options.budget);
    require_budget(report.check.c_str(), total, options.budget);
    for (std::uint64_t index = 0; index < *total; ++index) {
      space.decode(index, flat.data());
      if (!member(flat.data(), n, d)) continue;
      batch.insert(batch.end(), flat.begin(), flat.end());
      if (batch.size() == kBlock * width && !flush()) return report;
    }
  } else {
    std::mt19937_64 rng(options.mode.seed);
    for (std::uint64_t s = 0; s < options.mode.samples; ++s) {
      sampler(rng, flat);
      batch.insert(batch.end(), flat.begin(), flat.end());
      if (batch.size() == kBlock * width && !flush()) return report;
    }
  }
  if (!batch.empty() && !flush()) return report;
  report.passed = true;
  return report;
}

}  // namespace

FiniteModel::FiniteModel(OrderDescriptor order, std::uint32_t modulus) : order_(std::move(order)), modulus_(modulus) {
  if (modulus < 2 || modulus > kMaxModulus)
    throw Error(ErrorCode::InvalidArgument, "model modulus must lie in [2, " + std::to_string(kMaxModulus) + "]");
  theta_action_ = action_matrix(order_.theta());
}

std::vector<std::uint32_t> FiniteModel::action_matrix(const OrderElement& e) const {
  const IntMatrix r = regular_representation(order_, e);
  std::vector<std::uint32_t> out(r.rows() * r.cols());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) out[i * r.cols() + j] = reduce(r(i, j), modulus_);
  return out;
}

std::vector<std::uint32_t> FiniteModel::block_action_matrix(const OrderMatrix& m) const {
  const std::size_t d = degree();
  const std::size_t n = m.size();
  const std::size_t width = d * n;
  std::vector<std::uint32_t> block(width * width);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto a = action_matrix(m(r, c));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) block[(r * d + i) * width + c * d + j] = a[i * d + j];
    }
  return block;
}

ModelPoint FiniteModel::point(std::vector<std::uint32_t> coords) const {
  if (coords.size() != degree()) throw Error(ErrorCode::DegreeMismatch, "point has the wrong number of coordinates");
  for (auto& c : coords) c %= modulus_;
  return ModelPoint{std::move(coords)};
}

ModelPoint act(const FiniteModel& model, const OrderElement& e, const ModelPoint& p) {
  const std::size_t d = model.degree();
  if (p.coords.size() != d) throw Error(ErrorCode::DegreeMismatch, "point has the wrong number of coordinates");
  const auto a = model.action_matrix(e);
  ModelPoint out{std::vector<std::uint32_t>(d, 0)};
  for (std::size_t i = 0; i < d; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < d; ++j) acc += static_cast<std::uint64_t>(a[i * d + j]) * (p.coords[j] % model.modulus());
    out.coords[i] = static_cast<std::uint32_t>(acc % model.modulus());
  }
  return out;
}

ModelTuple act_tuple(const FiniteModel& model, const OrderMatrix& m, const ModelTuple& x) {
  require_compatible(model, m);
  const std::size_t n = m.size();
  if (x.size() != n) throw Error(ErrorCode::InvalidArgument, "tuple length does not match matrix size");
  const std::size_t d = model.degree();
  ModelTuple out(n, ModelPoint{std::vector<std::uint32_t>(d, 0)});
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const ModelPoint term = act(model, m(r, c), x[c]);
      for (std::size_t k = 0; k < d; ++k) out[r].coords[k] = (out[r].coords[k] + term.coords[k]) % model.modulus();
    }
  return out;
}

ModelTuple permute_tuple(const Permutation& tau, const ModelTuple& x) {
  if (tau.size() != x.size()) throw Error(ErrorCode::InvalidArgument, "permutation/tuple size mismatch");
  ModelTuple out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) out[tau(p)] = x[p];
  return out;
}

bool in_big_diagonal(const ModelTuple& x) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (x[a] == x[b]) return true;
  return false;
}

bool in_delta_prime(const ModelTuple& x) {
  const std::size_t n = x.size();
  for (std::size_t skip = 0; skip < n; ++skip) {
    const std::size_t ref = (skip == 0) ? 1 : 0;
    bool all_equal = true;
    for (std::size_t p = 0; p < n && all_equal; ++p)
      if (p != skip) all_equal = (x[p] == x[ref]);
    if (all_equal) return true;
  }
  return false;
}

bool check_bijective(const FiniteModel& model, const OrderMatrix& m) {
  require_compatible(model, m);
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  IntMatrix block(d * n, d * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const IntMatrix a = regular_representation(model.order(), m(r, c));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) block(r * d + i, c * d + j) = a(i, j);
    }
  Integer g;
  const Integer det = determinant(block);
  const Integer mod(model.modulus());
  mpz_gcd(g.get_mpz_t(), det.get_mpz_t(), mod.get_mpz_t());
  return g == 1;
}

ModelReport bijectivity_report(const FiniteModel& model, const OrderMatrix& m) {
  ModelReport r = base_report("bijective", model, m, nullptr);
  r.passed = check_bijective(model, m);
  r.examined = 1;
  r.note = "gcd(det of block regular representation, m) == 1";
  return r;
}

ModelReport check_descent(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options) {
  require_compatible(model, m);
  ModelReport report = base_report("descent", model, m, &options);
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  const Enumerator space(d, n, model.modulus());
  const std::size_t width = space.width();
  const std::vector<Permutation> perms = Permutation::all(n);
  const std::size_t per_tuple = perms.size();
  BatchEvaluator eval(model.block_action_matrix(m), width, model.modulus(), options.isa);

  constexpr std::size_t kBlock = 512;
  std::vector<std::uint32_t> bases, batch, images;
  std::vector<const std::uint32_t*> reference, candidate;

  // Each base tuple contributes its images under every permutation, identity first.
  auto flush = [&]() -> bool {
    const std::size_t count = bases.size() / width;
    batch.resize(count * per_tuple * width);
    for (std::size_t b = 0; b < count; ++b)
      for (std::size_t p = 0; p < per_tuple; ++p)
        permute_flat(perms[p], bases.data() + b * width, batch.data() + (b * per_tuple + p) * width, d);
    eval.run(batch, images);
    for (std::size_t b = 0; b < count; ++b) {
      ++report.examined;
      const std::uint32_t* base_image = images.data() + b * per_tuple * width;
      sorted_points(base_image, n, d, reference);
      for (std::size_t p = 1; p < per_tuple; ++p) {
        const std::uint32_t* img = images.data() + (b * per_tuple + p) * width;
        sorted_points(img, n, d, candidate);
        bool same = true;
        for (std::size_t k = 0; k < n && same; ++k) same = points_equal(reference[k], candidate[k], d);
        if (!same) {
          report.counterexample = Counterexample{space.to_tuple(bases.data() + b * width), perms[p],
                                                 space.to_tuple(base_image), space.to_tuple(img)};
          return false;
        }
      }
    }
    bases.clear();
    return true;
  };

  std::vector<std::uint32_t> flat(width);
  if (options.mode.kind == CheckMode::Kind::Exhaustive) {
    const auto total = bounded_power(model.modulus(), width, options.budget);
    require_budget("descent", total ? std::optional<std::uint64_t>(*total * per_tuple) : std::nullopt, options.budget);
    for (std::uint64_t index = 0; index < *total; ++index) {
      space.decode(index, flat.data());
      bases.insert(bases.end(), flat.begin(), flat.end());
      if (bases.size() == kBlock * width && !flush()) return report;
    }
  } else {
    std::mt19937_64 rng(options.mode.seed);
    std::uniform_int_distribution<std::uint32_t> coord(0, model.modulus() - 1);
    for (std::uint64_t s = 0; s < options.mode.samples; ++s) {
      for (auto& v : flat) v = coord(rng);
      bases.insert(bases.end(), flat.begin(), flat.end());
      if (bases.size() == kBlock * width && !flush()) return report;
    }
  }
  if (!bases.empty() && !flush()) return report;
  report.passed = true;
  return report;
}

ModelReport check_big_diagonal(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options) {
  require_compatible(model, m);
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  const std::uint32_t mod = model.modulus();
  auto sampler = [d, n, mod](std::mt19937_64& rng, std::vector<std::uint32_t>& flat) {
    std::uniform_int_distribution<std::uint32_t> coord(0, mod - 1);
    std::uniform_int_distribution<std::size_t> slot(0, n - 1);
    for (auto& v : flat) v = coord(rng);
    const std::size_t a = slot(rng);
    std::size_t b = slot(rng);
    if (b == a) b = (a + 1) % n;
    std::copy(flat.begin() + a * d, flat.begin() + (a + 1) * d, flat.begin() + b * d);
  };
  return check_subset_preserved(base_report("big_diagonal", model, m, &options), model, m, options,
                                flat_in_big_diagonal, sampler);
}

ModelReport check_delta_prime(const FiniteModel& model, const OrderMatrix& m, const CheckOptions& options) {
  require_compatible(model, m);
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "Delta' is defined for n >= 3");
  const std::uint32_t mod = model.modulus();
  auto sampler = [d, n, mod](std::mt19937_64& rng, std::vector<std::uint32_t>& flat) {
    std::uniform_int_distribution<std::uint32_t> coord(0, mod - 1);
    std::uniform_int_distribution<std::size_t> slot(0, n - 1);
    std::vector<std::uint32_t> common(d), odd(d);
    for (auto& v : common) v = coord(rng);
    for (auto& v : odd) v = coord(rng);
    const std::size_t skip = slot(rng);
    for (std::size_t p = 0; p < n; ++p) {
      const auto& src = (p == skip) ? odd : common;
      std::copy(src.begin(), src.end(), flat.begin() + p * d);
    }
  };
  return check_subset_preserved(base_report("delta_prime", model, m, &options), model, m, options,
                                flat_in_delta_prime, sampler);
}

ModelReport naturality_probe(const FiniteModel& model, const OrderMatrix& m, std::uint64_t budget) {
  require_compatible(model, m);
  ModelReport report = base_report("naturality_probe", model, m, nullptr);
  const std::size_t d = model.degree();
  const std::size_t n = m.size();
  const auto h_count = bounded_power(model.modulus(), d, budget);
  const std::uint64_t perms_count = factorial(n);
  require_budget("naturality_probe",
                 h_count && *h_count <= budget / perms_count ? std::optional<std::uint64_t>(*h_count * perms_count)
                                                             : std::nullopt,
                 budget);

  std::vector<std::vector<std::uint32_t>> entry_actions(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entry_actions[r * n + c] = model.action_matrix(m(r, c));
  const std::vector<std::uint32_t> zero(d * d, 0);

  std::vector<OrderElement> hs;
  std::vector<std::vector<std::uint32_t>> h_actions;
  std::vector<std::uint32_t> digits(d);
  for (std::uint64_t index = 0; index < *h_count; ++index) {
    std::uint64_t rest = index;
    OrderElement h = model.order().zero();
    for (std::size_t k = 0; k < d; ++k) {
      h.coeffs[k] = static_cast<unsigned long>(rest % model.modulus());
      rest /= model.modulus();
    }
    h_actions.push_back(model.action_matrix(h));
    hs.push_back(std::move(h));
  }

  for (const Permutation& tau : Permutation::all(n)) {
    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      ++report.examined;
      bool match = true;
      for (std::size_t c = 0; c < n && match; ++c)
        for (std::size_t r = 0; r < n && match; ++r)
          match = entry_actions[r * n + c] == (r == tau(c) ? h_actions[hi] : zero);
      if (match) {
        report.witness = NaturalForm{tau, hs[hi]};
        report.passed = false;
        report.note = "natural on this model";
        return report;
      }
    }
  }
  report.passed = true;
  report.note = "no (tau, h) with F = P_tau diag(h, ..., h) on this model";
  return report;
}

namespace {

nlohmann::json tuple_json(const ModelTuple& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : x) {
    nlohmann::json point = nlohmann::json::array();
    for (auto c : p.coords) point.push_back(std::to_string(c));
    out.push_back(std::move(point));
  }
  return out;
}

nlohmann::json perm_json(const Permutation& p) {
  nlohmann::json out = nlohmann::json::array();
  for (long v : p.one_based()) out.push_back(std::to_string(v));
  return out;
}

std::string tuple_text(const ModelTuple& x) {
  std::string s = "(";
  for (std::size_t p = 0; p < x.size(); ++p) {
    s += (p ? ", (" : "(");
    for (std::size_t k = 0; k < x[p].coords.size(); ++k) s += (k ? "," : "") + std::to_string(x[p].coords[k]);
    s += ")";
  }
  return s + ")";
}

std::string perm_text(const Permutation& p) {
  std::string s = "[";
  for (long v : p.one_based()) s += (s.size() > 1 ? "," : "") + std::to_string(v);
  return s + "]";
}

}  // namespace

nlohmann::json report_to_json(const ModelReport& report) {
  nlohmann::json minpoly = nlohmann::json::array();
  for (const auto& c : report.minpoly) minpoly.push_back(to_decimal(c));
  nlohmann::json out{
      {"check", report.check},
      {"model",
       {{"minpoly", minpoly},
        {"degree", std::to_string(report.degree)},
        {"m", std::to_string(report.modulus)},
        {"n", std::to_string(report.n)}}},
      {"mode", report.mode},
      {"examined", std::to_string(report.examined)},
      {"passed", report.passed},
  };
  if (report.seed) out["seed"] = std::to_string(*report.seed);
  if (!report.note.empty()) out["note"] = report.note;
  if (report.counterexample) {
    const auto& ce = *report.counterexample;
    nlohmann::json c{{"tuple", tuple_json(ce.tuple)}, {"image", tuple_json(ce.image)}};
    if (ce.tau) {
      c["tau"] = perm_json(*ce.tau);
      c["permuted_image"] = tuple_json(ce.permuted_image);
    }
    out["counterexample"] = c;
  }
  if (report.witness) {
    nlohmann::json h = nlohmann::json::array();
    for (const auto& c : report.witness->h.coeffs) h.push_back(to_decimal(c));
    out["witness"] = {{"tau", perm_json(report.witness->sigma)}, {"h", h}};
  }
  return out;
}

std::string report_to_text(const ModelReport& report) {
  std::ostringstream os;
  std::string verdict = report.passed ? "PASS" : "FAIL";
  if (report.check == "naturality_probe") verdict = report.passed ? "negative" : "positive";
  if (report.mode == "skipped") verdict = "skipped";
  os << report.check << ": " << verdict << " (m=" << report.modulus << ", d=" << report.degree
     << ", n=" << report.n << ", " << report.mode;
  if (report.seed) os << ", seed=" << *report.seed;
  os << ", examined=" << report.examined << ")";
  if (!report.note.empty()) os << "\n  " << report.note;
  if (report.counterexample) {
    const auto& ce = *report.counterexample;
    os << "\n  counterexample x = " << tuple_text(ce.tuple);
    if (ce.tau) os << ", tau = " << perm_text(*ce.tau);
    os << "\n  F(x) = " << tuple_text(ce.image);
    if (ce.tau) os << "\n  F(tau x) = " << tuple_text(ce.permuted_image);
  }
  if (report.witness) {
    os << "\n  witness tau = " << perm_text(report.witness->sigma) << ", h = (";
    for (std::size_t k = 0; k < report.witness->h.coeffs.size(); ++k)
      os << (k ? "," : "") << report.witness->h.coeffs[k].get_str();
    os << ")";
  }
  return os.str();
}

}  // namespace symaut
