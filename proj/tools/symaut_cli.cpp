#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "symaut/construct.hpp"
#include "symaut/error.hpp"
#include "symaut/finmodel.hpp"
#include "symaut/render.hpp"
#include "symaut/serialize.hpp"

using namespace symaut;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Integer> parse_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(parse_integer(item.substr(first, last - first + 1)));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::uint32_t to_modulus(const Integer& v) {
  if (v < 2 || v > FiniteModel::kMaxModulus)
    throw UsageError("modulus " + to_decimal(v) + " outside [2, " + std::to_string(FiniteModel::kMaxModulus) + "]");
  return static_cast<std::uint32_t>(v.get_ui());
}

struct OrderFlags {
  std::string disc;
  std::string minpoly;

  OrderDescriptor resolve() const {
    if (disc.empty() == minpoly.empty()) throw UsageError("give exactly one of --disc or --minpoly");
    if (!disc.empty()) return OrderDescriptor::quadratic(parse_integer(disc));
    return OrderDescriptor::make(parse_list(minpoly));
  }
};

void add_order_flags(CLI::App* cmd, OrderFlags& flags) {
  cmd->add_option("--disc", flags.disc, "D: use the order Z[sqrt D] (power basis, even when not maximal)");
  cmd->add_option("--minpoly", flags.minpoly, "monic minimal polynomial of theta, constant term first, e.g. -1,-2,1,1");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidCertificate, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct ModelFlags {
  std::string moduli;
  bool exhaustive = false;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_flag("--exhaustive", flags.exhaustive, "enumerate every tuple (falls back to sampling above the budget)");
  cmd->add_option("--samples", flags.samples, "sample count when not exhaustive")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--budget", flags.budget, "exhaustive evaluation budget")->capture_default_str();
}

struct SuiteResult {
  std::vector<ModelReport> reports;
  bool failed = false;
};

template <typename Check>
ModelReport run_check(Check check, const FiniteModel& model, const OrderMatrix& m, const ModelFlags& flags) {
  CheckOptions opts;
  opts.budget = flags.budget;
  opts.mode = flags.exhaustive ? CheckMode::exhaustive() : CheckMode::sample(flags.samples, flags.seed);
  try {
    return check(model, m, opts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    opts.mode = CheckMode::sample(flags.samples, flags.seed);
    ModelReport r = check(model, m, opts);
    r.note = "exhaustive budget exceeded; sampled instead";
    return r;
  }
}

bool g_vanishes_mod(const OrderElement& g, std::uint32_t m) {
  for (const Integer& c : g.coeffs)
    if (!mpz_divisible_ui_p(c.get_mpz_t(), m)) return false;
  return true;
}

// Bijectivity, descent, diagonal checks and the naturality probe on one model.
// The probe is informational; only the other checks decide failure.
void run_suite(const OrderMatrix& m, std::uint32_t modulus, const ModelFlags& flags,
               const std::optional<OrderElement>& g, SuiteResult& out) {
  const FiniteModel model(m.order(), modulus);
  auto record = [&](ModelReport r) {
    out.failed = out.failed || !r.passed;
    out.reports.push_back(std::move(r));
  };
  record(bijectivity_report(model, m));
  record(run_check(check_descent, model, m, flags));
  record(run_check(check_big_diagonal, model, m, flags));
  if (m.size() >= 3) record(run_check(check_delta_prime, model, m, flags));

  ModelReport probe;
  if (g && g_vanishes_mod(*g, modulus)) {
    probe.check = "naturality_probe";
    probe.modulus = modulus;
    probe.degree = model.degree();
    probe.n = m.size();
    probe.minpoly = m.order().minpoly();
    probe.mode = "skipped";
    probe.passed = true;
    probe.note = "g vanishes mod m; probe skipped";
  } else {
    try {
      probe = naturality_probe(model, m, flags.budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      probe.check = "naturality_probe";
      probe.modulus = modulus;
      probe.degree = model.degree();
      probe.n = m.size();
      probe.minpoly = m.order().minpoly();
      probe.mode = "skipped";
      probe.passed = true;
      probe.note = "candidate space exceeds the budget; probe skipped";
    }
  }
  out.reports.push_back(std::move(probe));
}

std::vector<std::uint32_t> moduli_from(const std::string& text) {
  std::vector<std::uint32_t> out;
  if (text.empty()) return out;
  for (const Integer& v : parse_list(text)) out.push_back(to_modulus(v));
  return out;
}

void print_reports(const SuiteResult& suite) {
  for (const auto& r : suite.reports) std::cout << report_to_text(r) << "\n";
}

nlohmann::json reports_json(const SuiteResult& suite) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : suite.reports) arr.push_back(report_to_json(r));
  return arr;
}

// ---- forge

struct ForgeFlags {
  OrderFlags order;
  std::size_t n = 0;
  std::string sigma, unit, suborder, output;
  std::uint32_t height = 4;
  std::int64_t max_exp = 10000;
  bool json = false;
};

IntMatrix parse_basis(const std::string& text, std::size_t d) {
  std::vector<std::vector<Integer>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_list(row));
  if (rows.size() != d) throw UsageError("--suborder needs " + std::to_string(d) + " basis rows separated by ';'");
  IntMatrix basis(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (rows[r].size() != d) throw UsageError("--suborder rows need " + std::to_string(d) + " coordinates");
    for (std::size_t c = 0; c < d; ++c) basis(r, c) = rows[r][c];
  }
  return basis;
}

int run_forge(const ForgeFlags& flags) {
  const OrderDescriptor order = flags.order.resolve();
  if (flags.n < 2) throw UsageError("--n must be at least 2");
  ForgeOptions opts;
  opts.height_bound = flags.height;
  opts.max_exp = flags.max_exp;
  if (!flags.unit.empty()) opts.unit = order.element(parse_list(flags.unit));
  if (!flags.sigma.empty()) {
    std::vector<long> images;
    for (const Integer& v : parse_list(flags.sigma)) images.push_back(v.get_si());
    opts.sigma = Permutation::from_one_based(images);
  }
  if (!flags.suborder.empty()) opts.suborder = Suborder::make(order, parse_basis(flags.suborder, order.degree()));

  const AutomorphismCertificate cert = forge(order, flags.n, opts);
  const std::string text = certificate_to_json(cert).dump(2) + "\n";
  if (!flags.output.empty()) write_file(flags.output, text);
  if (flags.json)
    std::cout << text;
  else
    std::cout << certificate_summary(cert);
  return kOk;
}

// ---- verify

struct VerifyFlags {
  std::string path;
  ModelFlags model;
  bool json = false;
};

int run_verify(const VerifyFlags& flags) {
  const AutomorphismCertificate cert = certificate_from_json(read_json(flags.path));
  const VerificationReport report = verify_certificate(cert);

  // Stored flags must agree with the recomputation.
  bool stored_agree = true;
  for (const auto& [name, ok] : cert.checks)
    if (!ok) stored_agree = false;

  SuiteResult suite;
  for (std::uint32_t m : moduli_from(flags.model.moduli)) run_suite(cert.matrix, m, flags.model, cert.g, suite);

  const bool passed = report.passed() && stored_agree && !suite.failed;
  if (flags.json) {
    nlohmann::json checks = nlohmann::json::object();
    for (const auto& [name, ok] : report.items) checks[name] = ok;
    nlohmann::json out{{"certificate", flags.path}, {"checks", checks}, {"models", reports_json(suite)},
                       {"passed", passed}};
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& [name, ok] : report.items) std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!stored_agree) std::cout << "FAIL stored check flags are not all true\n";
    print_reports(suite);
    if (auto first = report.first_failure()) std::cout << "failed check: " << *first << "\n";
    std::cout << (passed ? "certificate verified" : "certificate rejected") << "\n";
  }
  return passed ? kOk : kCheckFailed;
}

// ---- recognize

int run_recognize(const std::string& path, bool json) {
  const OrderMatrix m = matrix_file_from_json(read_json(path));
  const auto form = recognize_symmetric_form(m);
  const auto natural = natural_decomposition(m);
  if (json) {
    nlohmann::json out{{"symmetric_form", nullptr}, {"natural", natural.has_value()}};
    if (form)
      out["symmetric_form"] = {{"sigma", permutation_to_json(form->sigma)},
                               {"f", element_to_json(form->f)},
                               {"g", element_to_json(form->g)}};
    if (natural)
      out["natural_witness"] = {{"sigma", permutation_to_json(natural->sigma)}, {"h", element_to_json(natural->h)}};
    std::cout << out.dump(2) << "\n";
  } else {
    if (form) {
      std::cout << "sigma = " << render_permutation(form->sigma) << "\n";
      std::cout << "f = " << render(m.order(), form->f) << "\n";
      std::cout << "g = " << render(m.order(), form->g) << "\n";
    } else {
      std::cout << "not of symmetric form\n";
    }
    if (natural)
      std::cout << "nonnatural: no (sigma = " << render_permutation(natural->sigma)
                << ", h = " << render(m.order(), natural->h) << ")\n";
    else
      std::cout << "nonnatural: yes\n";
  }
  return form ? kOk : kCheckFailed;
}

// ---- units

void print_unit(const OrderDescriptor& order, const char* label, const UnitCertificate& u) {
  std::cout << label << ": " << render(order, u.element) << "\n";
  std::cout << "  coeffs = [" << to_decimal(u.element.coeffs[0]);
  for (std::size_t k = 1; k < u.element.coeffs.size(); ++k) std::cout << ", " << to_decimal(u.element.coeffs[k]);
  std::cout << "]\n  inverse = " << render(order, u.inverse) << "\n";
  std::cout << "  charpoly constant = " << to_decimal(u.charpoly_constant) << ", norm = "
            << to_decimal(norm(order, u.element)) << "\n";
  std::cout << "  certificate " << (certificate_holds(order, u) ? "holds" : "FAILS") << "\n";
}

int run_units(const OrderFlags& flags, std::uint32_t bound) {
  const OrderDescriptor order = flags.resolve();
  std::cout << "order: " << render_order(order) << "\n";
  bool found = false;
  if (auto D = order.quadratic_radicand(); D && is_squarefree(*D)) {
    print_unit(order, "fundamental unit", fundamental_unit_quadratic(*D));
    found = true;
  }
  if (auto u = search_unit(order, bound)) {
    print_unit(order, ("first unit within height " + std::to_string(bound)).c_str(), *u);
    found = true;
  } else {
    std::cout << "no unit other than +-1 within height " << bound << "\n";
  }
  return found ? kOk : kCheckFailed;
}

// ---- model-check

struct ModelCheckFlags {
  std::string path;
  ModelFlags model;
  bool json = false;
};

int run_model_check(const ModelCheckFlags& flags) {
  const nlohmann::json doc = read_json(flags.path);
  const OrderMatrix m = matrix_file_from_json(doc);
  const auto moduli = moduli_from(flags.model.moduli);
  if (moduli.empty()) throw UsageError("--m needs at least one modulus");
  SuiteResult suite;
  for (std::uint32_t mod : moduli) run_suite(m, mod, flags.model, std::nullopt, suite);
  if (flags.json) {
    std::cout << nlohmann::json{{"matrix", flags.path}, {"models", reports_json(suite)}, {"passed", !suite.failed}}
                     .dump(2)
              << "\n";
  } else {
    print_reports(suite);
    std::cout << (suite.failed ? "model checks failed" : "model checks passed") << "\n";
  }
  return suite.failed ? kCheckFailed : kOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CheckFailed:
    case ErrorCode::InvalidCertificate:
    case ErrorCode::UnitNotFound:
    case ErrorCode::SuborderPowerNotFound:
    case ErrorCode::ParityFailure:
    case ErrorCode::ZeroG:
    case ErrorCode::InexactDivision:
      return kCheckFailed;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonnatural automorphisms of X^n from units of a totally real order"};
  app.require_subcommand(1);
  std::function<int()> action;

  ForgeFlags forge_flags;
  auto* forge_cmd = app.add_subcommand("forge", "build and check a certificate F = P_sigma circulant(f, g, n)");
  add_order_flags(forge_cmd, forge_flags.order);
  forge_cmd->add_option("--n", forge_flags.n, "number of factors, n >= 2")->required();
  forge_cmd->add_option("--sigma", forge_flags.sigma, "row permutation as 1-based images, e.g. 2,1");
  forge_cmd->add_option("--unit", forge_flags.unit, "unit alpha as coefficients, constant first");
  forge_cmd->add_option("--height", forge_flags.height, "coefficient bound for the unit search")->capture_default_str();
  forge_cmd->add_option("--max-exp", forge_flags.max_exp, "largest power tried for --suborder")->capture_default_str();
  forge_cmd->add_option("--suborder", forge_flags.suborder, "suborder basis rows, e.g. '1,0;0,2'");
  forge_cmd->add_option("-o,--output", forge_flags.output, "write the certificate JSON here");
  forge_cmd->add_flag("--json", forge_flags.json, "print the certificate JSON instead of the summary");
  forge_cmd->callback([&] { action = [&] { return run_forge(forge_flags); }; });

  VerifyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "recompute every check of a certificate file");
  verify_cmd->add_option("certificate", verify_flags.path, "certificate JSON")->required();
  verify_cmd->add_option("--torsion", verify_flags.model.moduli, "moduli for finite-model suites, e.g. 2,3,5");
  add_model_flags(verify_cmd, verify_flags.model);
  verify_cmd->add_flag("--json", verify_flags.json, "JSON output");
  verify_cmd->callback([&] { action = [&] { return run_verify(verify_flags); }; });

  std::string recognize_path;
  bool recognize_json = false;
  auto* recognize_cmd = app.add_subcommand("recognize", "decompose a matrix as P_sigma circulant(f, g, n)");
  recognize_cmd->add_option("matrix", recognize_path, "matrix or certificate JSON")->required();
  recognize_cmd->add_flag("--json", recognize_json, "JSON output");
  recognize_cmd->callback([&] { action = [&] { return run_recognize(recognize_path, recognize_json); }; });

  OrderFlags units_order;
  std::uint32_t units_bound = 4;
  auto* units_cmd = app.add_subcommand("units", "print unit certificates of an order");
  add_order_flags(units_cmd, units_order);
  units_cmd->add_option("--bound", units_bound, "coefficient bound for the search")->capture_default_str();
  units_cmd->callback([&] { action = [&] { return run_units(units_order, units_bound); }; });

  ModelCheckFlags model_flags;
  auto* model_cmd = app.add_subcommand("model-check", "descent, diagonal and naturality checks on (Z/m)^d models");
  model_cmd->add_option("matrix", model_flags.path, "matrix or certificate JSON")->required();
  model_cmd->add_option("--m", model_flags.model.moduli, "moduli, e.g. 5 or 2,3,5")->required();
  add_model_flags(model_cmd, model_flags.model);
  model_cmd->add_flag("--json", model_flags.json, "JSON output");
  model_cmd->callback([&] { action = [&] { return run_model_check(model_flags); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    std::cerr << (code == kUsage ? "usage error: " : "check failed: ") << e.what() << "\n";
    return code;
  }
}
