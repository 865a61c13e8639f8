#include "nambu/cli.hpp"

#include "nambu/darboux.hpp"
#include "nambu/dynamics.hpp"
#include "nambu/io.hpp"
#include "nambu/nambu.hpp"
#include "nambu/symmetry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace nambu::cli {

namespace {

using io::json;

struct Options {
  std::string system_path;
  std::string second_path;
  std::string output;
  std::string format = "text";
  std::string x0;
  double dt = 1e-3;
  double t_end = 10.0;
  bool jacobian = false;
  std::vector<std::string> monitor_forms;
  std::size_t stride = 10;
  double radius = 0.5;
  std::size_t samples = 20;
  double tol = 1e-6;
  double eps_min = 1e-8;
  std::uint64_t seed = 0;
  int element = 0;
};

// Writes to -o when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw io::ParseError("cannot write " + path);
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

// "builtin:so3" | "builtin:sp2" | "builtin:so2" | "builtin:top[:Ix,Iy]" or a JSON path.
std::optional<std::string> builtin_name(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) != 0) return std::nullopt;
  return arg.substr(prefix.size());
}

Rational parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw io::ParseError("invalid rational '" + s + "'");
  q.canonicalize();
  return q;
}

NambuSystem load_system(const std::string& arg) {
  if (auto name = builtin_name(arg)) {
    if (name->rfind("top", 0) == 0) {
      Rational ix = 2, iy = 1;
      if (name->size() > 3) {
        const std::string params = name->substr(name->find(':') + 1);
        const auto comma = params.find(',');
        if ((*name)[3] != ':' || comma == std::string::npos) throw io::ParseError("expected builtin:top:Ix,Iy");
        ix = parse_rational(params.substr(0, comma));
        iy = parse_rational(params.substr(comma + 1));
      }
      return builtin::symmetric_top(ix, iy);
    }
    throw io::ParseError("unknown builtin system '" + arg + "'");
  }
  return io::system_from_json(io::read_json_file(arg));
}

MomentumMapPair load_symmetry(const std::string& arg) {
  if (auto name = builtin_name(arg)) {
    if (*name == "so3") return builtin::so3();
    if (*name == "sp2") return builtin::sp2();
    if (*name == "so2") return builtin::so2();
    throw io::ParseError("unknown builtin symmetry '" + arg + "'");
  }
  return io::symmetry_from_json(io::read_json_file(arg));
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw io::ParseError("invalid number '" + item + "' in vector");
    }
    if (used != item.size()) throw io::ParseError("invalid number '" + item + "' in vector");
    out.push_back(v);
  }
  return out;
}

// --- check -----------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const NambuSystem sys = load_system(o.system_path);
  const DifferentialForm hh = wedge(differential(sys.H1), differential(sys.H2));
  const VectorField N = sharp(hh);

  const std::vector<std::pair<std::string, bool>> checks = {
      {"canonical_form_closed", exterior_derivative(canonical_three_form(sys.n)).is_zero()},
      {"gauge_fixed", is_gauge_fixed(hh)},
      {"H1_conserved", triple_bracket(sys.H1, sys.H1, sys.H2).is_zero()},
      {"H2_conserved", triple_bracket(sys.H2, sys.H1, sys.H2).is_zero()},
      {"divergence_free", divergence(N).is_zero()},
  };
  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });

  Sink sink(o.output, out);
  if (o.format == "json") {
    json preds = json::object();
    for (const auto& [name, ok] : checks) preds[name] = ok;
    json rep = {{"n", sys.n}, {"checks", preds}, {"pass", all}};
    sink.stream() << rep.dump(2) << "\n";
  } else {
    for (const auto& [name, ok] : checks) sink.stream() << (ok ? "PASS " : "FAIL ") << name << "\n";
    sink.stream() << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kOk : kCheckFailed;
}

// --- simulate --------------------------------------------------------------

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const NambuSystem sys = load_system(o.system_path);
  const std::vector<double> x0 = parse_vector(o.x0);
  if (x0.size() != sys.dim())
    throw io::ParseError("--x0 has " + std::to_string(x0.size()) + " entries, system needs " +
                         std::to_string(sys.dim()));
  if (o.stride == 0) throw io::ParseError("--stride must be positive");

  std::vector<std::pair<std::string, DifferentialForm>> forms;
  for (const auto& path : o.monitor_forms) {
    DifferentialForm f = io::form_from_json(io::read_json_file(path));
    if (f.degree() != 2 || f.dim() != sys.dim())
      throw io::ParseError(path + ": monitor form must be a 2-form on R^" + std::to_string(sys.dim()));
    forms.emplace_back("pullback_" + std::filesystem::path(path).stem().string(), std::move(f));
  }

  IntegratorConfig cfg{o.dt, o.t_end, o.jacobian || !forms.empty()};
  try {
    cfg.step_count();
  } catch (const std::invalid_argument& e) {
    throw io::ParseError(e.what());
  }

  Trajectory traj;
  std::optional<std::string> failure;
  try {
    traj = integrate(sys, x0, cfg);
  } catch (const IntegrationFailure& e) {
    traj = e.partial();
    failure = e.what();
  }

  std::vector<std::pair<std::string, std::vector<double>>> cols;
  cols.emplace_back("H1", std::vector<double>());
  cols.emplace_back("H2", std::vector<double>());
  {
    const CompiledPolynomial h1(sys.H1), h2(sys.H2);
    for (const auto& x : traj.states) {
      cols[0].second.push_back(h1(x));
      cols[1].second.push_back(h2(x));
    }
  }
  if (cfg.with_jacobian) {
    std::vector<double> det = monitor_volume(traj);
    for (auto& v : det) v += 1.0;
    cols.emplace_back("detJ", std::move(det));
  }
  for (const auto& [name, f] : forms) cols.emplace_back(name, monitor_two_form(traj, f));

  Sink sink(o.output, out);
  std::ostream& os = sink.stream();
  os << "t";
  for (std::size_t i = 1; i <= sys.dim(); ++i) os << ",x" << i;
  for (const auto& c : cols) os << "," << c.first;
  os << "\n";
  const std::size_t rows = traj.size();
  for (std::size_t s = 0; s < rows; ++s) {
    if (s % o.stride != 0 && s + 1 != rows) continue;
    os << io::format_double(traj.times[s]);
    for (double v : traj.states[s]) os << "," << io::format_double(v);
    for (const auto& c : cols) os << "," << io::format_double(c.second[s]);
    os << "\n";
  }
  os.flush();

  if (failure) {
    err << "status: numeric failure: " << *failure << "\n";
    return kNumericFailure;
  }
  return kOk;
}

// --- bracket ---------------------------------------------------------------

int cmd_bracket(const Options& o, std::ostream& out) {
  const json doc = io::read_json_file(o.system_path);
  if (!doc.is_object() || !doc.contains("forms") || !doc["forms"].is_array())
    throw io::ParseError("bracket file needs a \"forms\" list");
  std::vector<DifferentialForm> forms;
  for (const auto& f : doc["forms"]) forms.push_back(io::form_from_json(f));

  json rep;
  if (forms.size() == 2 && forms[0].degree() == 2 && forms[1].degree() == 2) {
    if (forms[0].dim() != forms[1].dim()) throw io::ParseError("forms have different dimensions");
    blocks_for_dim(forms[0].dim());
    rep = {{"kind", "bracket_2forms"}, {"result", io::to_json(bracket_2forms(forms[0], forms[1]))}};
  } else if (forms.size() == 3 &&
             std::all_of(forms.begin(), forms.end(), [](const auto& f) { return f.degree() == 0; })) {
    const std::size_t d = forms[0].dim();
    if (forms[1].dim() != d || forms[2].dim() != d) throw io::ParseError("forms have different dimensions");
    blocks_for_dim(d);
    const Polynomial r = triple_bracket(forms[0].as_function(), forms[1].as_function(), forms[2].as_function());
    rep = {{"kind", "triple_bracket"}, {"dim", d}, {"result", io::to_json(r)}};
  } else {
    throw io::ParseError("bracket needs two 2-forms or three 0-forms");
  }
  Sink sink(o.output, out);
  sink.stream() << rep.dump(2) << "\n";
  return kOk;
}

// --- noether ---------------------------------------------------------------

json consistency_json(const ConsistencyReport& rep) {
  json pairs = json::array();
  for (const auto& e : rep.entries)
    pairs.push_back({{"i", e.i},
                     {"j", e.j},
                     {"bracket", io::to_json(e.bracket)},
                     {"expected", io::to_json(e.expected)},
                     {"anti_homomorphism", e.anti_homomorphism},
                     {"homomorphism", e.homomorphism}});
  return {{"convention", to_string(rep.convention())},
          {"anti_homomorphism_mismatches", rep.anti_mismatches},
          {"homomorphism_mismatches", rep.hom_mismatches},
          {"pairs", pairs}};
}

int cmd_noether(const Options& o, std::ostream& out) {
  std::optional<NambuSystem> sys;
  std::string sym_arg = o.system_path;
  if (!o.second_path.empty()) {
    sys = load_system(o.system_path);
    sym_arg = o.second_path;
  }
  const MomentumMapPair mm = load_symmetry(sym_arg);
  if (sys && sys->dim() != mm.dim())
    throw io::ParseError("system lives on R^" + std::to_string(sys->dim()) + ", symmetry on R^" +
                         std::to_string(mm.dim()));
  const int d = static_cast<int>(mm.algebra.dim());
  if (o.element < 0 || o.element > d) throw io::ParseError("--element out of range");

  const ConsistencyReport cons = check_momentum_consistency(mm);
  json rep = {{"consistency", consistency_json(cons)}};
  bool pass = true;
  if (sys) {
    json elems = json::array();
    for (int i = 1; i <= d; ++i) {
      if (o.element != 0 && i != o.element) continue;
      const NoetherReport nr = noether_check(*sys, mm, i);
      pass = pass && nr.conserved;
      elems.push_back({{"index", i},
                       {"label", mm.algebra.labels()[i - 1]},
                       {"sys_gauge_fixed", nr.sys_gauge_fixed},
                       {"mm_gauge_fixed", nr.mm_gauge_fixed},
                       {"symmetry", nr.symmetry},
                       {"conserved", nr.conserved},
                       {"lie_derivative", io::to_json(nr.lie_derivative)}});
    }
    rep["elements"] = elems;
  } else {
    pass = cons.convention() != BracketConvention::neither;
  }
  rep["pass"] = pass;
  Sink sink(o.output, out);
  sink.stream() << rep.dump(2) << "\n";
  return pass ? kOk : kCheckFailed;
}

// --- darboux ---------------------------------------------------------------

int cmd_darboux(const Options& o, std::ostream& out) {
  const DifferentialForm omega = io::form_from_json(io::read_json_file(o.system_path));
  const BlockThreeForm block = check_block_form(omega);
  if (!(o.radius >= 0.0)) throw io::ParseError("--radius must be nonnegative");
  if (!(o.dt > 0.0) || o.dt > 1.0) throw io::ParseError("--dt must lie in (0, 1]");
  const MoserPath path(block);
  DarbouxOptions opts;
  opts.dt = o.dt;
  opts.eps_min = o.eps_min;
  opts.radius = o.radius;
  const auto samples = sample_ball(path.dim(), o.samples, o.radius, o.seed);
  const DarbouxReport rep = verify_darboux(path, samples, opts, o.tol);
  Sink sink(o.output, out);
  sink.stream() << io::to_json(rep).dump(2) << "\n";
  if (rep.any_degenerate()) return kNumericFailure;
  return rep.pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nambu mechanics engine: exact brackets, Noether checks, flows, Darboux normalization", "nambu"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Check the structural predicates of a Nambu system");
  check->add_option("system", o.system_path, "System JSON file or builtin:top[:Ix,Iy]")->required();
  check->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check->add_option("-o,--output", o.output, "Report file");

  auto* sim = app.add_subcommand("simulate", "Integrate the Nambu flow and write a CSV trajectory");
  sim->add_option("system", o.system_path, "System JSON file or builtin:top[:Ix,Iy]")->required();
  sim->add_option("--x0", o.x0, "Initial state, comma separated")->required();
  sim->add_option("--dt", o.dt, "Step size");
  sim->add_option("--t-end", o.t_end, "Final time");
  sim->add_flag("--jacobian", o.jacobian, "Integrate the variational equation and emit detJ");
  sim->add_option("--monitor-form", o.monitor_forms, "2-form JSON whose pullback drift is monitored");
  sim->add_option("--stride", o.stride, "Write every stride-th step");
  sim->add_option("-o,--output", o.output, "CSV file");

  auto* br = app.add_subcommand("bracket", "Bracket two 2-forms or three functions");
  br->add_option("forms", o.system_path, "JSON file with a \"forms\" list")->required();
  br->add_option("-o,--output", o.output, "Result file");

  auto* noe = app.add_subcommand("noether", "Momentum-map consistency and Noether conservation");
  noe->add_option("system", o.system_path, "System file, or the symmetry file when given alone")->required();
  noe->add_option("symmetry", o.second_path, "Symmetry JSON file or builtin:so3|sp2|so2");
  noe->add_option("--element", o.element, "Check only this basis element (1-based)");
  noe->add_option("-o,--output", o.output, "Report file");

  auto* dar = app.add_subcommand("darboux", "Verify the Moser normalization of a block 3-form");
  dar->add_option("form", o.system_path, "3-form JSON file")->required();
  dar->add_option("--radius", o.radius, "Sampling radius around the origin");
  dar->add_option("--samples", o.samples, "Number of sample points");
  dar->add_option("--dt", o.dt, "Homotopy step size");
  dar->add_option("--tol", o.tol, "Pass threshold on the pullback error");
  dar->add_option("--seed", o.seed, "mt19937_64 seed for the sample points");
  dar->add_option("--eps-min", o.eps_min, "Smallest admissible |volume coefficient| along the path");
  dar->add_option("-o,--output", o.output, "Report file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (br->parsed()) return cmd_bracket(o, out);
    if (noe->parsed()) return cmd_noether(o, out);
    if (dar->parsed()) return cmd_darboux(o, out);
  } catch (const NumericFailure& e) {
    err << "status: numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace nambu::cli
