// Copyright 2026 The renyirate Authors.
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "renyirate/approx.hpp"
#include "renyirate/counterexample.hpp"
#include "renyirate/cutstack.hpp"
#include "renyirate/enumeration.hpp"
#include "renyirate/error.hpp"
#include "renyirate/io.hpp"
#include "renyirate/parallel.hpp"
#include "renyirate/spectral.hpp"

namespace renyirate::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Common {
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int workers = 0;
  bool serial = false;
  double base = kDefaultBase;

  EnumerationOptions enumeration() const {
    EnumerationOptions o;
    o.exec = serial ? Exec::Serial : Exec::Parallel;
    return o;
  }
};

void add_common(CLI::App* sub, Common& c, bool with_base) {
  sub->add_option("--out", c.out_dir, "Output directory (created if missing)");
  sub->add_option("--seed", c.seed, "Seed for every random choice");
  sub->add_option("--workers", c.workers, "Worker threads for parallel kernels")->check(CLI::PositiveNumber);
  sub->add_flag("--serial", c.serial, "Use the serial reference kernels");
  if (with_base) sub->add_option("--base", c.base, "Logarithm base");
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::vector<double> parse_alphas(const std::vector<std::string>& raw) {
  if (raw.empty()) fail(ErrorKind::OutOfRange, "alpha list is empty");
  std::vector<double> out;
  for (const std::string& s : raw) out.push_back(io::parse_double(s));
  return out;
}

fs::path output_dir(const Common& c) {
  fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorKind::ParseError, "cannot create output directory " + dir.string());
  return dir;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& out) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) fail(ErrorKind::ParseError, "cannot write " + path.string());
  out << "wrote " << path.string() << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

io::Model load_model(const std::string& path) {
  std::istringstream in(read_text(path));
  return io::read_model(in);
}

cutstack::Gadget load_gadget(const std::string& path) {
  std::istringstream in(read_text(path));
  try {
    return cutstack::read_gadget(in);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

EntropyValue spectral_rate(const io::Model& model, double alpha, double base) {
  if (const auto* mc = std::get_if<MarkovChain>(&model)) return renyi_rate_markov(*mc, alpha, base);
  const ProcessModel& p = std::get<ProcessModel>(model);
  switch (p.kind()) {
    case ProcessKind::Iid:
      return renyi_entropy(p.marginal(), alpha, base);
    case ProcessKind::Markov: {
      MarkovApproximation a(p.alphabet(), p.order(), std::vector<double>(p.table().begin(), p.table().end()),
                            p.initial_blocks());
      return renyi_rate_approx(a, alpha, base);
    }
    case ProcessKind::Hmm:
      break;
  }
  fail(ErrorKind::OutOfRange, "--spectral needs an iid or Markov model; use --enumerate for hidden Markov models");
}

// ---------------------------------------------------------------- renyi

struct RenyiArgs {
  Common common;
  std::string model;
  std::vector<std::string> alphas;
  bool spectral = false;
  bool enumerate = false;
  std::size_t n_max = 0;
  std::size_t fit_from = 2;
  std::size_t sample = 0;
};

int cmd_renyi(const RenyiArgs& a, std::ostream& out) {
  if (a.spectral == a.enumerate) fail(ErrorKind::OutOfRange, "choose exactly one of --spectral and --enumerate");
  if (a.enumerate && a.n_max == 0) fail(ErrorKind::OutOfRange, "--enumerate needs --n-max >= 1");
  const std::vector<double> alphas = parse_alphas(a.alphas);
  check_base(a.common.base);
  io::Model model = load_model(a.model);
  const fs::path dir = output_dir(a.common);

  std::ostringstream csv;
  csv << "alpha,n_or_spectral,value\n";
  Json fits = Json::array();
  if (a.spectral) {
    for (double alpha : alphas) {
      EntropyValue v = spectral_rate(model, alpha, a.common.base);
      csv << io::format_double(alpha) << ",spectral," << io::format_double(v.value) << '\n';
    }
  } else {
    ProcessModel p = io::as_process(model);
    for (double alpha : alphas) {
      ConvergenceReport r = renyi_rate_sequence(p, a.n_max, alpha, a.common.base, a.fit_from, a.common.enumeration());
      for (const Estimate& e : r.estimates) {
        csv << io::format_double(alpha) << ',' << e.index << ',' << io::format_double(e.value) << '\n';
      }
      Json f;
      f["alpha"] = alpha;
      f["limit"] = number_or_null(r.fitted_limit);
      f["gamma_hat"] = number_or_null(r.fitted_rate);
      f["scale"] = number_or_null(r.fitted_scale);
      f["residual"] = number_or_null(r.residual_rms);
      fits.push_back(f);
    }
  }
  write_file(dir / "rates.csv", csv.str(), out);
  if (a.enumerate) write_file(dir / "fit.json", dump(fits), out);

  std::ostringstream echo;
  if (const auto* mc = std::get_if<MarkovChain>(&model)) {
    io::write_chain(echo, *mc);
  } else {
    io::write_process(echo, std::get<ProcessModel>(model));
  }
  write_file(dir / "model.txt", echo.str(), out);

  if (a.sample > 0) {
    Sequence y = sample_path(io::as_process(model), a.sample, a.common.seed);
    std::ostringstream s;
    for (std::size_t i = 0; i < y.size(); ++i) s << (i ? " " : "") << y[i];
    s << '\n';
    write_file(dir / "sample.txt", s.str(), out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- approx

struct ApproxArgs {
  Common common;
  std::string model;
  std::string alpha = "2";
  std::size_t m_max = 6;
  std::size_t cap = kDefaultEnumerationCap;
};

int cmd_approx(const ApproxArgs& a, std::ostream& out) {
  const double alpha = io::parse_double(a.alpha);
  check_base(a.common.base);
  ProcessModel p = io::as_process(load_model(a.model));
  EnumerationOptions opts = a.common.enumeration();
  opts.cap = a.cap;
  ConvergenceReport r = approx_rate_sequence(p, alpha, a.m_max, a.common.base, opts);
  const fs::path dir = output_dir(a.common);

  std::ostringstream csv;
  csv << "m,value,diff\n";
  for (std::size_t i = 0; i < r.estimates.size(); ++i) {
    csv << r.estimates[i].index << ',' << io::format_double(r.estimates[i].value) << ',';
    if (i > 0) csv << io::format_double(r.estimates[i].value - r.estimates[i - 1].value);
    csv << '\n';
  }
  write_file(dir / "approx.csv", csv.str(), out);

  Json fit;
  fit["alpha"] = alpha;
  fit["m_max"] = a.m_max;
  fit["rho_hat"] = number_or_null(r.fitted_rate);
  fit["scale"] = number_or_null(r.fitted_scale);
  fit["limit"] = number_or_null(r.fitted_limit);
  fit["residual"] = number_or_null(r.residual_rms);
  write_file(dir / "fit.json", dump(fit), out);

  std::ostringstream delta;
  delta << "m,max_abs_entry,positive_entries_per_row\n";
  for (std::size_t m = 1; m < a.m_max; ++m) {
    DeltaDiagnostic d = delta_matrix_diagnostic(p, m, alpha, opts);
    delta << m << ',' << io::format_double(d.max_abs_entry) << ',' << d.positive_entries_per_row << '\n';
  }
  write_file(dir / "delta.csv", delta.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------- cutstack

struct CutstackArgs {
  Common common;
  std::string op;
  std::vector<std::string> files;
  std::size_t m = 0;
  std::size_t k = 0;
  bool concatenated = false;
};

int cmd_cutstack(const CutstackArgs& a, std::ostream& out) {
  const std::size_t need = (a.op == "ics" || a.op == "eps-indep") ? 2 : 1;
  if (a.files.size() != need) {
    fail(ErrorKind::OutOfRange, "cutstack " + a.op + " takes " + std::to_string(need) + " gadget file(s)");
  }
  std::vector<cutstack::Gadget> g;
  for (const std::string& f : a.files) g.push_back(load_gadget(f));
  check_base(a.common.base);
  const fs::path dir = output_dir(a.common);

  auto emit_gadget = [&](const cutstack::Gadget& r) {
    std::ostringstream s;
    cutstack::write_gadget(s, r);
    write_file(dir / "gadget.txt", s.str(), out);
  };

  if (a.op == "ics") {
    emit_gadget(cutstack::independent_cut_stack(g[0], g[1]));
  } else if (a.op == "mfold") {
    if (a.m == 0) fail(ErrorKind::OutOfRange, "mfold needs --m >= 1");
    emit_gadget(cutstack::m_fold_ics(g[0], a.m));
  } else if (a.op == "merge") {
    emit_gadget(cutstack::merge_gadget(g[0]));
  } else if (a.op == "entropy") {
    Json j;
    j["entropy"] = cutstack::normalized_shannon_entropy(g[0], a.common.base);
    j["base"] = a.common.base;
    j["height"] = g[0].uniform_height();
    j["columns"] = g[0].size();
    write_file(dir / "entropy.json", dump(j), out);
  } else if (a.op == "eps-indep") {
    cutstack::Rational eps = cutstack::epsilon_independence_exact(g[0], g[1]);
    Json j;
    j["epsilon"] = cutstack::to_double(eps);
    j["exact"] = cutstack::to_string(eps);
    write_file(dir / "epsilon.json", dump(j), out);
  } else if (a.op == "blocks") {
    if (a.k == 0) fail(ErrorKind::OutOfRange, "blocks needs --k >= 1");
    cutstack::BlockDistribution d = a.concatenated ? cutstack::concatenated_block_distribution(g[0], a.k)
                                                   : cutstack::gadget_block_distribution(g[0], a.k);
    std::ostringstream csv;
    csv << "word,probability,exact\n";
    for (const auto& [word, q] : d) {
      csv << word << ',' << io::format_double(cutstack::to_double(q)) << ',' << cutstack::to_string(q) << '\n';
    }
    write_file(dir / "blocks.csv", csv.str(), out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- counterexample

struct CounterexampleArgs {
  Common common;
  std::string mode = "toy";
  std::size_t levels = 3;
  std::vector<std::string> alphas{"2"};
};

int cmd_counterexample(const CounterexampleArgs& a, std::ostream& out) {
  using namespace counterexample;
  const Mode mode = a.mode == "faithful" ? Mode::Faithful : Mode::Toy;
  const std::vector<double> alphas = parse_alphas(a.alphas);
  const ConstructionParams params = select_parameters(mode);
  const Construction run = run_construction(params, a.levels, alphas);
  const fs::path dir = output_dir(a.common);

  std::ostringstream csv;
  csv << "m,l_m,beta_m,alpha_m,entropy_lower_bound";
  for (double alpha : alphas) csv << ",renyi_upper_bound_alpha_" << io::format_double(alpha);
  csv << ",entropy,fold,epsilon,independence_certified\n";
  for (const ConstructionLevel& lv : run.levels) {
    csv << lv.m << ',' << lv.height.get_str() << ',' << io::format_double(cutstack::to_double(params.beta(lv.m)))
        << ',' << io::format_double(cutstack::to_double(params.alpha(lv.m))) << ','
        << io::format_double(lv.entropy_lower_bound);
    for (double alpha : alphas) csv << ',' << io::format_double(renyi_upper_bound(params, alpha, lv.m));
    csv << ',' << (lv.entropy ? io::format_double(*lv.entropy) : "");
    if (lv.choice) {
      csv << ',' << lv.choice->fold << ',' << (lv.choice->epsilon ? io::format_double(*lv.choice->epsilon) : "")
          << ',' << (lv.choice->certified ? "true" : "false");
    } else {
      csv << ",,,";
    }
    csv << '\n';
  }
  write_file(dir / "levels.csv", csv.str(), out);

  Json v;
  v["mode"] = std::string(mode_name(run.verdict.mode));
  v["faithful"] = run.verdict.faithful;
  v["l1"] = params.l1;
  v["N"] = params.n_offset;
  v["levels"] = a.levels;
  v["property_A"] = run.verdict.property_a;
  v["property_B"] = run.verdict.property_b;
  v["property_D_bound"] = run.verdict.property_d_bound;
  v["renyi_gap"] = run.verdict.renyi_gap;
  write_file(dir / "verdict.json", dump(v), out);
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  if (kind == ErrorKind::PropertyViolated) return kExitProperty;
  return is_input_error(kind) ? kExitInput : kExitNumeric;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Renyi entropy rates, Markov approximations and cutting-and-stacking gadgets"};
  app.name("renyirate");
  app.require_subcommand(1);

  RenyiArgs renyi;
  CLI::App* s_renyi = app.add_subcommand("renyi", "Renyi entropy rate of a chain or process");
  add_common(s_renyi, renyi.common, true);
  s_renyi->add_option("--model", renyi.model, "Chain or process file")->required();
  s_renyi->add_option("--alpha", renyi.alphas, "Comma-separated orders")->delimiter(',')->required();
  s_renyi->add_flag("--spectral", renyi.spectral, "Closed-form rate from the Perron root");
  s_renyi->add_flag("--enumerate", renyi.enumerate, "Per-symbol prefix entropies n = 1..n-max");
  s_renyi->add_option("--n-max", renyi.n_max, "Largest prefix length");
  s_renyi->add_option("--fit-from", renyi.fit_from, "First prefix length used by the rate fit");
  s_renyi->add_option("--sample", renyi.sample, "Also write a sampled path of this length");

  ApproxArgs approx;
  CLI::App* s_approx = app.add_subcommand("approx", "Renyi rates of order-m Markov approximations");
  add_common(s_approx, approx.common, true);
  s_approx->add_option("--model", approx.model, "Chain or process file")->required();
  s_approx->add_option("--alpha", approx.alpha, "Order");
  s_approx->add_option("--m-max", approx.m_max, "Largest approximation order")->check(CLI::PositiveNumber);
  s_approx->add_option("--cap", approx.cap, "Enumeration cap on A^(m+1)");

  CutstackArgs cut;
  CLI::App* s_cut = app.add_subcommand("cutstack", "Operations on gadget files");
  add_common(s_cut, cut.common, true);
  s_cut->add_option("op", cut.op, "ics | mfold | merge | entropy | eps-indep | blocks")
      ->required()
      ->check(CLI::IsMember({"ics", "mfold", "merge", "entropy", "eps-indep", "blocks"}));
  s_cut->add_option("files", cut.files, "Gadget file(s)")->required();
  s_cut->add_option("--m", cut.m, "Fold count for mfold");
  s_cut->add_option("--k", cut.k, "Block length for blocks");
  s_cut->add_flag("--concatenated", cut.concatenated, "Blocks of the concatenated-block process");

  CounterexampleArgs ce;
  CLI::App* s_ce = app.add_subcommand("counterexample", "Cutting-and-stacking construction and its verdicts");
  add_common(s_ce, ce.common, false);
  s_ce->add_option("--mode", ce.mode, "faithful | toy")->check(CLI::IsMember({"faithful", "toy"}));
  s_ce->add_option("--levels", ce.levels, "Number of levels")->check(CLI::PositiveNumber);
  s_ce->add_option("--alpha", ce.alphas, "Comma-separated orders > 1")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  auto configure = [](const Common& c) {
    if (c.workers > 0) set_worker_count(c.workers);
    apply_worker_env();
  };

  try {
    if (s_renyi->parsed()) {
      configure(renyi.common);
      return cmd_renyi(renyi, out);
    }
    if (s_approx->parsed()) {
      configure(approx.common);
      return cmd_approx(approx, out);
    }
    if (s_cut->parsed()) {
      configure(cut.common);
      return cmd_cutstack(cut, out);
    }
    configure(ce.common);
    return cmd_counterexample(ce, out);
  } catch (const Error& e) {
    err << "renyirate: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

}  // namespace renyirate::cli
