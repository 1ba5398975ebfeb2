// Command-line surface for the granular sequence algebra and the two
// predictability demonstrations.  Every run emits a JSON or CSV report with
// a header block (tool version, config echo, seeds); identical config and
// seeds give byte-identical output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "granular/granular.hpp"
#include "granular/serialize.hpp"

namespace {

using granular::BigInt;
using granular::BitSequence;
using granular::Dyadic;
using granular::SymbolicAngle;
using ojson = nlohmann::ordered_json;

constexpr const char* kFloatNote = "IEEE-754 binary64, 17 significant digits";
constexpr const char* kLongFloatNote =
    "extended precision (long double), 21 significant digits";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_long_double(long double v) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

// ---------------------------------------------------------------------------
// report emission

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // echoed verbatim
  ojson payload = ojson::object();              // json form
  std::vector<std::string> csv_columns;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::pair<std::string, std::string>> csv_notes;

  void set(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
};

struct OutputOptions {
  std::string format = "json";
  std::string path = "-";
};

void write_all(const OutputOptions& out, const std::string& text) {
  if (out.path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output path: " + out.path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + out.path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void emit(const Report& report, const OutputOptions& out) {
  if (out.format == "json") {
    ojson root;
    root["tool"] = "granular";
    root["version"] = granular::version;
    root["command"] = report.command;
    ojson cfg = ojson::object();
    for (const auto& [k, v] : report.config) cfg[k] = v;
    root["config"] = cfg;
    for (const auto& [k, v] : report.payload.items()) root[k] = v;
    write_all(out, root.dump(2) + "\n");
    return;
  }
  std::string text;
  text += "# tool=granular\n";
  text += std::string("# version=") + granular::version + "\n";
  text += "# command=" + report.command + "\n";
  for (const auto& [k, v] : report.config) text += "# " + k + "=" + v + "\n";
  for (const auto& [k, v] : report.csv_notes) text += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < report.csv_columns.size(); ++i)
    text += (i ? "," : "") + csv_field(report.csv_columns[i]);
  text += "\n";
  for (const auto& row : report.csv_rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      text += (i ? "," : "") + csv_field(row[i]);
    text += "\n";
  }
  write_all(out, text);
}

// ---------------------------------------------------------------------------
// shared input plumbing

struct SequenceInput {
  std::string source = "seeded";  // pi | sqrt2 | seeded
  std::uint64_t seed = 1;
  unsigned n = 5;
};

void add_sequence_options(CLI::App* cmd, SequenceInput& in) {
  cmd->add_option("--source", in.source, "sequence source")
      ->check(CLI::IsMember({"pi", "sqrt2", "seeded"}))
      ->capture_default_str();
  cmd->add_option("--seed", in.seed, "generator seed (seeded source)")
      ->capture_default_str();
  cmd->add_option("--n", in.n, "sequence exponent; length is 2^n")
      ->check(CLI::Range(1u, 20u))
      ->capture_default_str();
}

BitSequence make_sequence(const SequenceInput& in) {
  granular::SeedSource src;
  if (in.source == "pi")
    src.kind = granular::SeedKind::pi_digits;
  else if (in.source == "sqrt2")
    src.kind = granular::SeedKind::sqrt2_digits;
  else
    src.kind = granular::SeedKind::generator;
  src.seed = in.seed;
  return granular::seed_sequence(src, in.n);
}

void echo_sequence_config(Report& r, const SequenceInput& in) {
  r.set("source", in.source);
  if (in.source == "seeded") r.set("seed", std::to_string(in.seed));
  r.set("n", std::to_string(in.n));
}

// "+-+..." literally, or @path to read the characters from a file
BitSequence load_pm_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream f(arg.substr(1));
    if (!f) throw std::runtime_error("cannot read sequence file: " + arg);
    std::string text, line;
    while (std::getline(f, line)) text += line;
    return BitSequence::from_pm_string(text);
  }
  return BitSequence::from_pm_string(arg);
}

enum class RationalKind { dyadic, rational_non_dyadic, invalid };

// Classifies "p/q": exact dyadic when q is a power of two; otherwise a
// rational that the granular algebra cannot represent.
RationalKind classify_rational(const std::string& text, Dyadic& out) {
  if (auto d = Dyadic::parse(text)) {
    out = *d;
    return RationalKind::dyadic;
  }
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos && digits(text.substr(0, slash)) &&
      digits(text.substr(slash + 1)) && text.substr(slash + 1) != "0")
    return RationalKind::rational_non_dyadic;
  return RationalKind::invalid;
}

Dyadic require_dyadic(const std::string& text, const std::string& flag) {
  Dyadic d;
  if (classify_rational(text, d) != RationalKind::dyadic)
    throw CLI::ValidationError(flag, "expected a dyadic rational like 3/8");
  return d;
}

// ---------------------------------------------------------------------------
// verification suites

struct CheckList {
  std::vector<std::pair<std::string, bool>> checks;
  bool all() const {
    for (const auto& [_, ok] : checks)
      if (!ok) return false;
    return true;
  }
  void add(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
};

void finish_checks(Report& r, const CheckList& list, int& exit_code) {
  auto rows = ojson::array();
  for (const auto& [name, ok] : list.checks)
    rows.push_back(ojson{{"check", name}, {"pass", ok}});
  r.payload["checks"] = rows;
  r.payload["all_pass"] = list.all();
  r.csv_columns = {"check", "pass"};
  for (const auto& [name, ok] : list.checks)
    r.csv_rows.push_back({name, ok ? "true" : "false"});
  if (!list.all()) exit_code = 1;
}

CheckList run_algebra_checks(unsigned n, std::uint64_t seed, unsigned trials) {
  using granular::build_root;
  using granular::compose;
  using granular::correlation;
  using granular::i_power;
  using granular::SignedPermutation;

  CheckList list;
  std::size_t length = std::size_t(1) << n;
  SignedPermutation op_i = build_root(0, length);
  SignedPermutation neg = SignedPermutation::negation(length);

  bool eq8 = true;
  for (unsigned t = 0; t < trials; ++t) {
    BitSequence s = granular::random_sequence(seed + t, n);
    if (!(op_i.apply(op_i.apply(s)) == granular::negate(s))) eq8 = false;
  }
  list.add("i(i(S)) = -S on " + std::to_string(trials) + " random sequences",
           eq8);

  bool eq10 = true;
  for (std::size_t l : {std::size_t(8), std::size_t(64), std::size_t(1024)}) {
    if (!(compose(build_root(1, l), build_root(1, l)) == build_root(0, l)))
      eq10 = false;
    if (!(compose(build_root(2, l), build_root(2, l)) == build_root(1, l)))
      eq10 = false;
  }
  list.add("half and quarter roots square into the next root", eq10);

  unsigned add_n = std::min(n, 6u);
  std::size_t add_len = std::size_t(1) << add_n;
  long long steps = 1ll << (add_n - 1);
  bool additive = true, commute = true;
  std::vector<granular::SignedPermutation> ops;
  for (long long t = 0; t < 4 * steps; ++t)
    ops.push_back(i_power(Dyadic(BigInt(t), add_n - 1), add_len));
  for (long long x = 0; x < 4 * steps && additive; ++x)
    for (long long y = 0; y < 4 * steps; ++y) {
      Dyadic ax(BigInt(x), add_n - 1), ay(BigInt(y), add_n - 1);
      if (!(compose(ops[x], ops[y]) == i_power(ax + ay, add_len))) {
        additive = false;
        break;
      }
    }
  for (unsigned m1 = 0; m1 + 1 <= add_n - 1 && commute; ++m1)
    for (unsigned m2 = 0; m2 + 1 <= add_n - 1; ++m2)
      if (!(compose(build_root(m1, add_len), build_root(m2, add_len)) ==
            compose(build_root(m2, add_len), build_root(m1, add_len)))) {
        commute = false;
        break;
      }
  list.add("exponent additivity, exhaustive at n=" + std::to_string(add_n),
           additive);
  list.add("root generators commute at n=" + std::to_string(add_n), commute);

  bool isometry = true;
  for (unsigned t = 0; t < trials; ++t) {
    granular::SplitMix64 rng(seed + 31 * t);
    Dyadic a(BigInt(static_cast<long long>(rng.below(4ull << (n - 1)))),
             n - 1);
    SignedPermutation p = i_power(a, length);
    BitSequence x = granular::random_sequence(seed + 2 * t, n);
    BitSequence y = granular::random_sequence(seed + 2 * t + 1, n);
    if (!(correlation(p.apply(x), p.apply(y)) == correlation(x, y)))
      isometry = false;
  }
  list.add("rotations preserve correlation", isometry);

  bool refusal = false;
  try {
    i_power(Dyadic(BigInt(1), n), length);
  } catch (const granular::not_representable_error&) {
    refusal = true;
  }
  list.add("exponents finer than the length are refused", refusal);
  return list;
}

CheckList run_quat_checks(unsigned n) {
  using granular::compose;
  using granular::generate_roots;
  using granular::quaternion_ops;
  using granular::SignedPermutation;

  CheckList list;
  std::size_t length = std::size_t(1) << n;
  auto q = quaternion_ops(length);
  SignedPermutation neg = SignedPermutation::negation(length);

  // printed quadruplet actions
  auto expect = [&](const SignedPermutation& op,
                    std::vector<std::uint32_t> perm,
                    std::vector<std::int8_t> signs) {
    granular::detail::BlockPattern pattern{std::move(perm), std::move(signs)};
    return op == granular::detail::tile(pattern, length);
  };
  list.add("I acts as (-a2, a1, a4, -a3)",
           expect(q.i_op, {1, 0, 3, 2}, {-1, 1, 1, -1}));
  list.add("J acts as (-a3, -a4, a1, a2)",
           expect(q.j_op, {2, 3, 0, 1}, {-1, -1, 1, 1}));
  list.add("K acts as (-a4, a3, -a2, a1)",
           expect(q.k_op, {3, 2, 1, 0}, {-1, 1, -1, 1}));

  list.add("I^2 = J^2 = K^2 = -1",
           compose(q.i_op, q.i_op) == neg && compose(q.j_op, q.j_op) == neg &&
               compose(q.k_op, q.k_op) == neg);
  list.add("KJI = -1", compose(q.k_op, compose(q.j_op, q.i_op)) == neg);
  list.add("JI = K, IK = J, KJ = I",
           compose(q.j_op, q.i_op) == q.k_op &&
               compose(q.i_op, q.k_op) == q.j_op &&
               compose(q.k_op, q.j_op) == q.i_op);
  list.add("reversed products negate",
           compose(q.i_op, q.j_op) == compose(neg, q.k_op) &&
               compose(q.k_op, q.i_op) == compose(neg, q.j_op) &&
               compose(q.j_op, q.k_op) == compose(neg, q.i_op));

  auto level2 = generate_roots(2, length);
  list.add("level-2 roots are I, J, K in order",
           level2.ops.size() == 3 && level2.ops[0] == q.i_op &&
               level2.ops[1] == q.j_op && level2.ops[2] == q.k_op);

  bool counts = true, squares = true;
  for (unsigned m = 1; m <= std::min(n, 6u); ++m) {
    auto set = generate_roots(m, std::size_t(1) << std::max(m, n));
    if (set.ops.size() != (std::size_t(1) << m) - 1) counts = false;
    SignedPermutation neg_m =
        SignedPermutation::negation(std::size_t(1) << std::max(m, n));
    for (const auto& op : set.ops)
      if (!(compose(op, op) == neg_m)) squares = false;
  }
  list.add("root sets count 2^m - 1 up to m=" +
               std::to_string(std::min(n, 6u)),
           counts);
  list.add("every generated root squares to -1", squares);

  granular::SuperpositionSpec half;
  half.cos_value = Dyadic(BigInt(1), 1);
  BitSequence s = granular::random_sequence(3, n);
  list.add("quaternionic mixing hits cos exactly",
           granular::correlation(q.i_op.apply(s),
                                 granular::quat_superpose(s, half)) ==
               Dyadic(BigInt(1), 1));
  return list;
}

// ---------------------------------------------------------------------------

struct Cli {
  CLI::App app{"granular sequence algebra and predictability demonstrations",
               "granular"};
  OutputOptions out;
  int exit_code = 0;

  Cli() {
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "line-oriented key=value config; dotted keys address "
                   "subcommands");
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--output", out.path, "output path; - is stdout")
        ->capture_default_str();
  }
};

void cmd_seq(Cli& cli) {
  auto* seq = cli.app.add_subcommand("seq", "make and correlate sequences");
  seq->require_subcommand(1);

  {
    auto* make = seq->add_subcommand("make", "emit a seeded sequence");
    auto in = std::make_shared<SequenceInput>();
    add_sequence_options(make, *in);
    make->callback([&cli, in] {
      BitSequence s = make_sequence(*in);
      Report r;
      r.command = "seq make";
      echo_sequence_config(r, *in);
      r.payload["length"] = s.size();
      r.payload["pm"] = s.to_pm_string();
      r.payload["elements"] = nlohmann::json(s);
      r.csv_columns = {"index", "value"};
      for (std::size_t i = 0; i < s.size(); ++i)
        r.csv_rows.push_back({std::to_string(i), std::to_string(int(s[i]))});
      emit(r, cli.out);
    });
  }

  {
    auto* corr = seq->add_subcommand("corr", "exact correlation of two "
                                             "sequences");
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    corr->add_option("--a", *a, "first sequence, +- string or @file")
        ->required();
    corr->add_option("--b", *b, "second sequence, +- string or @file")
        ->required();
    corr->callback([&cli, a, b] {
      BitSequence sa = load_pm_arg(*a);
      BitSequence sb = load_pm_arg(*b);
      Dyadic c = granular::correlation(sa, sb);
      Report r;
      r.command = "seq corr";
      r.set("a", *a);
      r.set("b", *b);
      r.payload["length"] = sa.size();
      r.payload["correlation"] = c.to_string();
      r.csv_columns = {"length", "correlation"};
      r.csv_rows.push_back({std::to_string(sa.size()), c.to_string()});
      emit(r, cli.out);
    });
  }
}

void cmd_rotate(Cli& cli) {
  auto* rot = cli.app.add_subcommand(
      "rotate", "apply i^alpha to a sequence; refuses exponents finer than "
                "the sequence's granularity");
  auto in = std::make_shared<SequenceInput>();
  auto alpha_text = std::make_shared<std::string>();
  add_sequence_options(rot, *in);
  rot->add_option("--alpha", *alpha_text, "exponent of i, a rational p/q")
      ->required();
  rot->callback([&cli, in, alpha_text] {
    Report r;
    r.command = "rotate";
    r.set("alpha", *alpha_text);
    echo_sequence_config(r, *in);
    BitSequence s = make_sequence(*in);
    r.payload["input_pm"] = s.to_pm_string();

    Dyadic alpha;
    RationalKind kind = classify_rational(*alpha_text, alpha);
    if (kind == RationalKind::invalid)
      throw CLI::ValidationError("--alpha", "expected a rational like 3/4");
    if (kind == RationalKind::rational_non_dyadic) {
      r.payload["status"] = "undefined";
      r.payload["reason"] =
          "alpha is not a dyadic rational; i^alpha exists only for "
          "exponents with a finite binary expansion";
    } else {
      try {
        auto op = granular::i_power(alpha, s.size());
        BitSequence rotated = op.apply(s);
        r.payload["status"] = "ok";
        r.payload["output_pm"] = rotated.to_pm_string();
      } catch (const granular::not_representable_error& e) {
        r.payload["status"] = "not representable";
        r.payload["reason"] = e.what();
      }
    }
    r.csv_columns = {"status", "input", "output"};
    r.csv_rows.push_back(
        {r.payload["status"].get<std::string>(), s.to_pm_string(),
         r.payload.contains("output_pm")
             ? r.payload["output_pm"].get<std::string>()
             : ""});
    emit(r, cli.out);
  });
}

void cmd_superpose(Cli& cli) {
  auto* sup = cli.app.add_subcommand(
      "superpose", "construct a sequence with an exact correlation");
  auto in = std::make_shared<SequenceInput>();
  auto cos_text = std::make_shared<std::string>();
  auto sin_text = std::make_shared<std::string>();
  auto flip_seed = std::make_shared<std::uint64_t>(granular::default_flip_seed);
  add_sequence_options(sup, *in);
  auto* copt = sup->add_option("--c", *cos_text,
                               "dyadic cos target; correlates against S");
  auto* sopt = sup->add_option("--s", *sin_text,
                               "dyadic sin target; correlates against i(S)");
  copt->excludes(sopt);
  sup->add_option("--flip-seed", *flip_seed, "seed for the flip positions")
      ->capture_default_str();
  sup->callback([&cli, in, cos_text, sin_text, flip_seed] {
    if (cos_text->empty() && sin_text->empty())
      throw CLI::RequiredError("--c or --s");
    Report r;
    r.command = "superpose";
    bool cos_branch = !cos_text->empty();
    Dyadic target = require_dyadic(cos_branch ? *cos_text : *sin_text,
                                   cos_branch ? "--c" : "--s");
    r.set(cos_branch ? "c" : "s", target.to_string());
    echo_sequence_config(r, *in);
    r.set("flip-seed", std::to_string(*flip_seed));

    BitSequence s = make_sequence(*in);
    granular::SuperpositionSpec spec;
    if (cos_branch)
      spec.cos_value = target;
    else
      spec.sin_value = target;
    spec.flip_seed = *flip_seed;

    r.payload["branch"] = cos_branch ? "cos" : "sin";
    r.payload["target"] = target.to_string();
    r.payload["base_pm"] = s.to_pm_string();
    try {
      BitSequence sp = granular::superpose(s, spec);
      BitSequence anchor =
          cos_branch ? s : granular::build_root(0, s.size()).apply(s);
      Dyadic achieved = granular::correlation(anchor, sp);
      r.payload["status"] = "ok";
      r.payload["result_pm"] = sp.to_pm_string();
      r.payload["achieved"] = achieved.to_string();
      std::size_t flips = 0;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (anchor[i] != sp[i]) ++flips;
      r.payload["flips"] = flips;
    } catch (const granular::not_representable_error& e) {
      r.payload["status"] = "not representable";
      r.payload["reason"] = e.what();
    }
    r.csv_columns = {"status", "target", "achieved", "result"};
    r.csv_rows.push_back(
        {r.payload["status"].get<std::string>(), target.to_string(),
         r.payload.contains("achieved")
             ? r.payload["achieved"].get<std::string>()
             : "",
         r.payload.contains("result_pm")
             ? r.payload["result_pm"].get<std::string>()
             : ""});
    emit(r, cli.out);
  });
}

void cmd_definability(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "definability", "disjointness certificate for an offset family");
  auto c_text = std::make_shared<std::string>();
  auto n = std::make_shared<unsigned>(6);
  cmd->add_option("--c", *c_text, "dyadic cos of the family offset, in [0,1]")
      ->required();
  cmd->add_option("--n", *n, "grid exponent")
      ->check(CLI::Range(1u, 16u))
      ->capture_default_str();
  cmd->callback([&cli, c_text, n] {
    Dyadic c = require_dyadic(*c_text, "--c");
    Report r;
    r.command = "definability";
    r.set("c", c.to_string());
    r.set("n", std::to_string(*n));

    granular::Certificate cert = granular::disjointness_certificate(c);
    auto base_grid = granular::definable_grid(*n);
    SymbolicAngle offset_base = cert.disjoint
        ? SymbolicAngle(granular::AngleBase{"lam'"}, Dyadic(0))
        : SymbolicAngle(c == Dyadic(1) ? Dyadic(0) : Dyadic(BigInt(1), 1));
    auto offset_grid = granular::definable_grid(*n, offset_base);
    auto overlap = granular::grid_intersection(base_grid, offset_grid);

    r.payload["certificate"] = nlohmann::json(cert);
    r.payload["disjoint"] = cert.disjoint;
    r.payload["grid_size"] = base_grid.size();
    r.payload["intersection_size"] = overlap.size();
    r.csv_columns = {"step", "text"};
    for (std::size_t i = 0; i < cert.steps.size(); ++i)
      r.csv_rows.push_back({std::to_string(i + 1), cert.steps[i]});
    r.csv_notes.emplace_back("disjoint", cert.disjoint ? "true" : "false");
    r.csv_notes.emplace_back("grid_size", std::to_string(base_grid.size()));
    r.csv_notes.emplace_back("intersection_size",
                             std::to_string(overlap.size()));
    emit(r, cli.out);
  });
}

void cmd_interference(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "interference-scan",
      "sweep superposition targets from -1 to 1 and report the realized "
      "correlations");
  auto in = std::make_shared<SequenceInput>();
  auto k = std::make_shared<int>(-1);
  auto flip_seed = std::make_shared<std::uint64_t>(granular::default_flip_seed);
  add_sequence_options(cmd, *in);
  cmd->add_option("--k", *k, "grid depth: targets t/2^k; default n-1")
      ->check(CLI::Range(0, 20));
  cmd->add_option("--flip-seed", *flip_seed, "seed for the flip positions")
      ->capture_default_str();
  cmd->callback([&cli, in, k, flip_seed] {
    unsigned depth = *k < 0 ? in->n - 1 : static_cast<unsigned>(*k);
    Report r;
    r.command = "interference-scan";
    echo_sequence_config(r, *in);
    r.set("k", std::to_string(depth));
    r.set("flip-seed", std::to_string(*flip_seed));

    BitSequence s = make_sequence(*in);
    auto rows = granular::interference_scan(
        s, granular::dyadic_scan_grid(depth), *flip_seed);

    auto jrows = ojson::array();
    r.csv_columns = {"target", "achieved", "status"};
    for (const auto& row : rows) {
      ojson jr;
      jr["target"] = row.target.to_string();
      jr["achieved"] = row.achieved ? row.achieved->to_string() : "undefined";
      jr["status"] = row.status;
      jrows.push_back(jr);
      r.csv_rows.push_back({row.target.to_string(),
                            row.achieved ? row.achieved->to_string() : "",
                            row.status});
    }
    r.payload["rows"] = jrows;
    emit(r, cli.out);
  });
}

void cmd_epr_table(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "epr-table", "exact correlation table of an entangled pair; cells "
                   "outside either family's grid are undefined");
  auto in = std::make_shared<SequenceInput>();
  auto c_text = std::make_shared<std::string>();
  auto left = std::make_shared<std::string>("grid");
  auto right = std::make_shared<std::string>("grid");
  auto label = std::make_shared<std::string>("lam'");
  auto flip_seed = std::make_shared<std::uint64_t>(granular::default_flip_seed);
  add_sequence_options(cmd, *in);
  cmd->add_option("--c", *c_text, "dyadic correlation of the pair")
      ->required();
  cmd->add_option("--left", *left,
                  "comma-separated pi-coefficients, or 'grid'")
      ->capture_default_str();
  cmd->add_option("--right", *right,
                  "offsets from the right family base, or 'grid'")
      ->capture_default_str();
  cmd->add_option("--label", *label, "name of the offset base angle")
      ->capture_default_str();
  cmd->add_option("--flip-seed", *flip_seed, "seed for the flip positions")
      ->capture_default_str();
  cmd->callback([&cli, in, c_text, left, right, label, flip_seed] {
    Dyadic c = require_dyadic(*c_text, "--c");
    Report r;
    r.command = "epr-table";
    r.set("c", c.to_string());
    echo_sequence_config(r, *in);
    r.set("left", *left);
    r.set("right", *right);
    r.set("label", *label);
    r.set("flip-seed", *flip_seed == granular::default_flip_seed
                           ? "default"
                           : std::to_string(*flip_seed));

    BitSequence s = make_sequence(*in);
    auto model = granular::make_pair_model(s, c, *flip_seed, *label);

    auto parse_angles = [&](const std::string& text,
                            const SymbolicAngle& base) {
      std::vector<SymbolicAngle> angles;
      if (text == "grid") return granular::definable_grid(in->n, base);
      std::string token;
      std::stringstream ss(text);
      while (std::getline(ss, token, ',')) {
        Dyadic coeff;
        RationalKind kind = classify_rational(token, coeff);
        if (kind == RationalKind::dyadic)
          angles.emplace_back(base.base(), base.coeff() + coeff);
        else if (kind == RationalKind::rational_non_dyadic)
          // not a dyadic multiple of pi: foreign to every family here
          angles.emplace_back(granular::AngleBase{token + "*pi"}, Dyadic(0));
        else
          throw CLI::ValidationError("--left/--right",
                                     "expected rationals like 0,1/2,3/4");
      }
      return angles;
    };
    auto left_angles = parse_angles(*left, SymbolicAngle{});
    auto right_angles = parse_angles(*right, model.right_base);

    auto table =
        granular::pair_correlation_table(model, left_angles, right_angles);
    r.payload["model"] = ojson{{"correlation", c.to_string()},
                               {"right_base", model.right_base.to_string()},
                               {"disjoint", model.certificate.disjoint}};
    r.payload["table"] = nlohmann::json(table);

    r.csv_columns = {"left\\right"};
    for (const auto& ra : table.right_angles)
      r.csv_columns.push_back(ra.to_string());
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
      std::vector<std::string> row{table.left_angles[i].to_string()};
      for (const auto& cell : table.cells[i])
        row.push_back(cell ? cell->to_string() : "undefined");
      r.csv_rows.push_back(std::move(row));
    }
    emit(r, cli.out);
  });
}

void cmd_roots(Cli& cli) {
  auto* roots = cli.app.add_subcommand(
      "roots", "generate the square roots of -1 on 2^m-blocks");
  roots->require_subcommand(1);

  {
    auto* gen = roots->add_subcommand("generate", "emit the full root set");
    auto m = std::make_shared<unsigned>(2);
    auto n = std::make_shared<unsigned>(0);
    gen->add_option("--m", *m, "block exponent; block size is 2^m")
        ->check(CLI::Range(1u, 10u))
        ->capture_default_str();
    gen->add_option("--n", *n, "sequence exponent; defaults to m");
    gen->callback([&cli, m, n] {
      unsigned nn = *n == 0 ? *m : *n;
      Report r;
      r.command = "roots generate";
      r.set("m", std::to_string(*m));
      r.set("n", std::to_string(nn));
      auto set = granular::generate_roots(*m, std::size_t(1) << nn);
      r.payload["roots"] = nlohmann::json(set);
      r.csv_columns = {"op", "position", "perm", "sign"};
      for (std::size_t o = 0; o < set.ops.size(); ++o)
        for (std::size_t j = 0; j < set.ops[o].size(); ++j)
          r.csv_rows.push_back({std::to_string(o), std::to_string(j),
                                std::to_string(set.ops[o].perm()[j]),
                                std::to_string(int(set.ops[o].signs()[j]))});
      emit(r, cli.out);
    });
  }

  {
    auto* count = roots->add_subcommand("count", "count and verify the set");
    auto m = std::make_shared<unsigned>(2);
    count->add_option("--m", *m, "block exponent")
        ->check(CLI::Range(1u, 12u))
        ->capture_default_str();
    count->callback([&cli, m] {
      Report r;
      r.command = "roots count";
      r.set("m", std::to_string(*m));
      auto set = granular::generate_roots(*m, std::size_t(1) << *m);
      // squaring to -1 was checked on construction
      r.payload["level"] = set.level;
      r.payload["count"] = set.ops.size();
      r.payload["expected"] = (std::size_t(1) << *m) - 1;
      r.payload["all_square_to_negation"] = true;
      r.csv_columns = {"level", "count", "expected"};
      r.csv_rows.push_back({std::to_string(set.level),
                            std::to_string(set.ops.size()),
                            std::to_string((std::size_t(1) << *m) - 1)});
      emit(r, cli.out);
    });
  }
}

void cmd_verify(Cli& cli) {
  {
    auto* cmd = cli.app.add_subcommand(
        "algebra-verify", "run the rotation-algebra identity suite");
    auto n = std::make_shared<unsigned>(5);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto trials = std::make_shared<unsigned>(100);
    cmd->add_option("--n", *n, "sequence exponent")
        ->check(CLI::Range(3u, 14u))
        ->capture_default_str();
    cmd->add_option("--seed", *seed, "seed")->capture_default_str();
    cmd->add_option("--trials", *trials, "random trials per check")
        ->capture_default_str();
    cmd->callback([&cli, n, seed, trials] {
      Report r;
      r.command = "algebra-verify";
      r.set("n", std::to_string(*n));
      r.set("seed", std::to_string(*seed));
      r.set("trials", std::to_string(*trials));
      finish_checks(r, run_algebra_checks(*n, *seed, *trials), cli.exit_code);
      emit(r, cli.out);
    });
  }
  {
    auto* cmd = cli.app.add_subcommand(
        "quat-verify", "run the quaternion identity suite");
    auto n = std::make_shared<unsigned>(4);
    cmd->add_option("--n", *n, "sequence exponent")
        ->check(CLI::Range(2u, 14u))
        ->capture_default_str();
    cmd->callback([&cli, n] {
      Report r;
      r.command = "quat-verify";
      r.set("n", std::to_string(*n));
      finish_checks(r, run_quat_checks(*n), cli.exit_code);
      emit(r, cli.out);
    });
  }
}

void cmd_cascade(Cli& cli) {
  auto* cmd = cli.app.add_subcommand(
      "cascade", "upscale-cascade horizon partial sums and their finite "
                 "limit");
  auto n0 = std::make_shared<unsigned>(50);
  auto tau = std::make_shared<double>(1.0);
  auto kl = std::make_shared<double>(1.0);
  cmd->add_option("--n0", *n0, "number of octaves")
      ->check(CLI::Range(1u, 100000u))
      ->capture_default_str();
  cmd->add_option("--tau-l", *tau, "turnover time at the reference scale")
      ->capture_default_str();
  cmd->add_option("--k-l", *kl, "reference wavenumber")
      ->capture_default_str();
  cmd->callback([&cli, n0, tau, kl] {
    granular::CascadeParams p{static_cast<long double>(*kl),
                              static_cast<long double>(*tau)};
    Report r;
    r.command = "cascade";
    r.set("n0", std::to_string(*n0));
    r.set("tau-l", fmt_double(*tau));
    r.set("k-l", fmt_double(*kl));

    long double limit = granular::horizon_limit(p);
    r.payload["limit"] = fmt_long_double(limit);
    r.payload["float_precision"] = kLongFloatNote;
    auto jrows = ojson::array();
    r.csv_columns = {"octaves", "partial", "remainder"};
    r.csv_notes.emplace_back("limit", fmt_long_double(limit));
    r.csv_notes.emplace_back("float_precision", kLongFloatNote);
    for (unsigned n = 1; n <= *n0; ++n) {
      long double partial = granular::horizon_partial(p, n);
      long double rem = granular::horizon_remainder(p, n);
      jrows.push_back(ojson{{"octaves", n},
                            {"partial", fmt_long_double(partial)},
                            {"remainder", fmt_long_double(rem)}});
      r.csv_rows.push_back({std::to_string(n), fmt_long_double(partial),
                            fmt_long_double(rem)});
    }
    r.payload["rows"] = jrows;
    emit(r, cli.out);
  });
}

void add_lorenz_params(CLI::App* cmd, std::shared_ptr<granular::LorenzParams> p,
                       std::shared_ptr<std::string> form) {
  cmd->add_option("--sigma", p->sigma)->capture_default_str();
  cmd->add_option("--r", p->r)->capture_default_str();
  cmd->add_option("--b", p->b)->capture_default_str();
  cmd->add_option("--dt", p->dt)->capture_default_str();
  cmd->add_option("--form", *form, "vector-field form")
      ->check(CLI::IsMember({"standard", "as-printed"}))
      ->capture_default_str();
}

void echo_lorenz_params(Report& r, const granular::LorenzParams& p,
                        const std::string& form) {
  r.set("sigma", fmt_double(p.sigma));
  r.set("r", fmt_double(p.r));
  r.set("b", fmt_double(p.b));
  r.set("dt", fmt_double(p.dt));
  r.set("form", form);
}

void apply_lorenz_form(granular::LorenzParams& p, const std::string& form) {
  p.form = form == "as-printed" ? granular::LorenzForm::as_printed
                                : granular::LorenzForm::standard;
}

void cmd_lorenz(Cli& cli) {
  auto* lorenz = cli.app.add_subcommand(
      "lorenz", "trajectories, counterfactual perturbations and the leading "
                "Lyapunov exponent");
  lorenz->require_subcommand(1);

  {
    auto* run = lorenz->add_subcommand("run", "integrate one trajectory");
    auto p = std::make_shared<granular::LorenzParams>();
    auto form = std::make_shared<std::string>("standard");
    auto steps = std::make_shared<std::size_t>(2000);
    auto x0 = std::make_shared<std::vector<double>>(
        std::vector<double>{1.0, 1.0, 1.0});
    add_lorenz_params(run, p, form);
    run->add_option("--steps", *steps, "number of RK4 steps")
        ->capture_default_str();
    run->add_option("--start", *x0, "initial state: x y z")
        ->expected(3);
    run->callback([&cli, p, form, steps, x0] {
      apply_lorenz_form(*p, *form);
      Report r;
      r.command = "lorenz run";
      echo_lorenz_params(r, *p, *form);
      r.set("steps", std::to_string(*steps));
      r.set("start", fmt_double((*x0)[0]) + " " + fmt_double((*x0)[1]) + " " +
                         fmt_double((*x0)[2]));
      auto traj = granular::integrate(
          *p, granular::Vec3{(*x0)[0], (*x0)[1], (*x0)[2]}, *steps);
      r.payload["float_precision"] = kFloatNote;
      r.csv_notes.emplace_back("float_precision", kFloatNote);
      auto jrows = ojson::array();
      r.csv_columns = {"step", "t", "x", "y", "z"};
      for (std::size_t i = 0; i < traj.size(); ++i) {
        double t = static_cast<double>(i) * p->dt;
        jrows.push_back(ojson::array({fmt_double(t), fmt_double(traj[i].x),
                                      fmt_double(traj[i].y),
                                      fmt_double(traj[i].z)}));
        r.csv_rows.push_back({std::to_string(i), fmt_double(t),
                              fmt_double(traj[i].x), fmt_double(traj[i].y),
                              fmt_double(traj[i].z)});
      }
      r.payload["trajectory"] = jrows;
      emit(r, cli.out);
    });
  }

  {
    auto* cf = lorenz->add_subcommand(
        "counterfactual", "perturb X on attractor samples and measure the "
                          "off-sample distance");
    auto p = std::make_shared<granular::LorenzParams>();
    auto form = std::make_shared<std::string>("standard");
    auto m = std::make_shared<std::size_t>(100000);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto spinup = std::make_shared<double>(10.0);
    auto cfg = std::make_shared<granular::CounterfactualConfig>();
    add_lorenz_params(cf, p, form);
    cf->add_option("--m", *m, "attractor sample size")->capture_default_str();
    cf->add_option("--seed", *seed, "seed")->capture_default_str();
    cf->add_option("--spinup", *spinup, "discarded spin-up time")
        ->capture_default_str();
    cf->add_option("--interval", cfg->sample_interval, "sampling interval")
        ->capture_default_str();
    cf->add_option("--deltas", cfg->deltas, "X perturbations")
        ->delimiter(',')
        ->capture_default_str();
    cf->add_option("--horizon", cfg->horizon, "paired-trajectory horizon")
        ->capture_default_str();
    cf->add_option("--subset", cfg->trajectory_subset,
                   "points used for paired trajectories")
        ->capture_default_str();
    cf->add_option("--baseline", cfg->baseline_count,
                   "fresh points for the baseline distance")
        ->capture_default_str();
    cf->callback([&cli, p, form, m, seed, spinup, cfg] {
      apply_lorenz_form(*p, *form);
      Report r;
      r.command = "lorenz counterfactual";
      echo_lorenz_params(r, *p, *form);
      r.set("m", std::to_string(*m));
      r.set("seed", std::to_string(*seed));
      r.set("spinup", fmt_double(*spinup));
      r.set("interval", fmt_double(cfg->sample_interval));
      {
        std::string ds;
        for (double d : cfg->deltas)
          ds += (ds.empty() ? "" : ",") + fmt_double(d);
        r.set("deltas", ds);
      }
      r.set("horizon", fmt_double(cfg->horizon));
      r.set("subset", std::to_string(cfg->trajectory_subset));
      r.set("baseline", std::to_string(cfg->baseline_count));

      auto sample = granular::attractor_sample(*p, *m, *spinup, *seed,
                                               cfg->sample_interval);
      auto report = granular::counterfactual_experiment(*p, sample, *cfg);

      r.payload["float_precision"] = kFloatNote;
      r.csv_notes.emplace_back("float_precision", kFloatNote);
      r.payload["baseline_median_nn"] = fmt_double(report.baseline_median_nn);
      auto jrows = ojson::array();
      r.csv_columns = {"delta", "median_nn", "mean_nn", "rms_end"};
      r.csv_notes.emplace_back("baseline_median_nn",
                               fmt_double(report.baseline_median_nn));
      for (const auto& d : report.per_delta) {
        jrows.push_back(ojson{{"delta", fmt_double(d.delta)},
                              {"median_nn", fmt_double(d.median_nn)},
                              {"mean_nn", fmt_double(d.mean_nn)},
                              {"rms_end", fmt_double(d.rms_end)}});
        r.csv_rows.push_back({fmt_double(d.delta), fmt_double(d.median_nn),
                              fmt_double(d.mean_nn), fmt_double(d.rms_end)});
      }
      r.payload["deltas"] = jrows;
      emit(r, cli.out);
    });
  }

  {
    auto* ly = lorenz->add_subcommand("lyapunov",
                                      "estimate the leading exponent");
    auto p = std::make_shared<granular::LorenzParams>();
    auto form = std::make_shared<std::string>("standard");
    auto duration = std::make_shared<double>(1000.0);
    auto seed = std::make_shared<std::uint64_t>(1);
    add_lorenz_params(ly, p, form);
    ly->add_option("--duration", *duration, "averaging time")
        ->capture_default_str();
    ly->add_option("--seed", *seed, "seed")->capture_default_str();
    ly->callback([&cli, p, form, duration, seed] {
      apply_lorenz_form(*p, *form);
      Report r;
      r.command = "lorenz lyapunov";
      echo_lorenz_params(r, *p, *form);
      r.set("duration", fmt_double(*duration));
      r.set("seed", std::to_string(*seed));
      double lambda = granular::lyapunov_estimate(*p, *duration, *seed);
      r.payload["lambda"] = fmt_double(lambda);
      r.payload["float_precision"] = kFloatNote;
      r.csv_notes.emplace_back("float_precision", kFloatNote);
      r.csv_columns = {"lambda"};
      r.csv_rows.push_back({fmt_double(lambda)});
      emit(r, cli.out);
    });
  }
}

} // namespace

void enable_fallthrough(CLI::App* app) {
  for (CLI::App* sub : app->get_subcommands({})) {
    sub->fallthrough();
    enable_fallthrough(sub);
  }
}

int main(int argc, char** argv) {
  Cli cli;
  cmd_seq(cli);
  cmd_rotate(cli);
  cmd_superpose(cli);
  cmd_definability(cli);
  cmd_interference(cli);
  cmd_epr_table(cli);
  cmd_roots(cli);
  cmd_verify(cli);
  cmd_cascade(cli);
  cmd_lorenz(cli);
  enable_fallthrough(&cli.app);

  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return cli.app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app.exit(e);  // prints the message
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return cli.exit_code;
}
