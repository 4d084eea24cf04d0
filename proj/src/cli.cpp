#include "harmonica/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "harmonica/aumann.hpp"
#include "harmonica/convexity.hpp"
#include "harmonica/errors.hpp"
#include "harmonica/expr.hpp"
#include "harmonica/quadrature.hpp"
#include "harmonica/setfn.hpp"
#include "harmonica/version.hpp"

namespace harmonica {

namespace {

// %.17g round-trips every finite double; non-finite values have no JSON
// number form and are emitted as null.
std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

// Insertion-ordered JSON object writer. Key order is part of the output
// contract: identical runs must produce byte-identical reports.
class JsonObj {
 public:
  JsonObj& str(const char* k, const std::string& v) {
    key(k);
    buf_ += json_escape(v);
    return *this;
  }
  JsonObj& num(const char* k, double v) {
    key(k);
    buf_ += fmt_double(v);
    return *this;
  }
  JsonObj& integer(const char* k, long long v) {
    key(k);
    buf_ += std::to_string(v);
    return *this;
  }
  JsonObj& uinteger(const char* k, unsigned long long v) {
    key(k);
    buf_ += std::to_string(v);
    return *this;
  }
  JsonObj& boolean(const char* k, bool v) {
    key(k);
    buf_ += v ? "true" : "false";
    return *this;
  }
  JsonObj& raw(const char* k, const std::string& r) {
    key(k);
    buf_ += r;
    return *this;
  }
  std::string done() const { return buf_ + "}"; }

 private:
  void key(const char* k) {
    if (!first_) buf_ += ',';
    first_ = false;
    buf_ += '"';
    buf_ += k;
    buf_ += "\":";
  }
  std::string buf_ = "{";
  bool first_ = true;
};

std::string interval_json(const Interval& iv) {
  return "{\"lo\":" + fmt_double(iv.lo) + ",\"hi\":" + fmt_double(iv.hi) + "}";
}

std::string interval_text(const Interval& iv) {
  return "[" + fmt_text(iv.lo) + ", " + fmt_text(iv.hi) + "]";
}

bool parse_double_text(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e && std::isfinite(out);
}

bool parse_int_text(const std::string& s, int& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_uint_text(const std::string& s, unsigned long long& out) {
  const char* b = s.data();
  const char* e = b + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e;
}

bool parse_interval_text(const std::string& s, Interval& out,
                         std::string& why) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) {
    why = "expected 'lo:hi'";
    return false;
  }
  double lo = 0.0;
  double hi = 0.0;
  if (!parse_double_text(s.substr(0, pos), lo) ||
      !parse_double_text(s.substr(pos + 1), hi)) {
    why = "endpoints must be finite numbers";
    return false;
  }
  if (lo > hi) {
    why = "lo must be <= hi";
    return false;
  }
  out = Interval(lo, hi);
  return true;
}

bool is_command(const std::string& s) {
  return s == "check-fn" || s == "check-svf" || s == "check-set" ||
         s == "starshaped" || s == "integrate" || s == "hh" ||
         s == "hh-scalar" || s == "ops";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void apply_config(RunConfig& cfg, const std::string& key,
                  const std::string& value, int lineno) {
  const auto bad = [&](const std::string& why) {
    return ConfigError(lineno, key,
                       "config line " + std::to_string(lineno) + ", field '" +
                           key + "': " + why);
  };
  const auto as_double = [&]() {
    double v = 0.0;
    if (!parse_double_text(value, v))
      throw bad("expected a finite number, got '" + value + "'");
    return v;
  };
  const auto as_int = [&]() {
    int v = 0;
    if (!parse_int_text(value, v))
      throw bad("expected an integer, got '" + value + "'");
    return v;
  };
  const auto as_interval = [&]() {
    Interval v;
    std::string why;
    if (!parse_interval_text(value, v, why))
      throw bad(why + ", got '" + value + "'");
    return v;
  };

  if (key == "command") {
    if (!is_command(value)) throw bad("unknown command '" + value + "'");
    cfg.command = value;
  } else if (key == "f") {
    cfg.f = value;
  } else if (key == "f1") {
    cfg.f1 = value;
  } else if (key == "f2") {
    cfg.f2 = value;
  } else if (key == "domain") {
    cfg.domain = as_interval();
  } else if (key == "fn_domain") {
    cfg.fn_domain = as_interval();
  } else if (key == "m") {
    cfg.m = as_double();
  } else if (key == "alpha") {
    cfg.alpha = as_double();
  } else if (key == "tol") {
    cfg.tol = as_double();
  } else if (key == "c") {
    cfg.c = as_double();
  } else if (key == "samples") {
    cfg.samples = as_int();
  } else if (key == "grid_t") {
    cfg.grid_t = as_int();
  } else if (key == "trials") {
    cfg.trials = as_int();
  } else if (key == "seed") {
    unsigned long long v = 0;
    if (!parse_uint_text(value, v))
      throw bad("expected an unsigned integer, got '" + value + "'");
    cfg.seed = v;
  } else if (key == "op") {
    cfg.op = value;
  } else if (key == "a") {
    cfg.a = as_interval();
  } else if (key == "b") {
    cfg.b = as_interval();
  } else if (key == "output") {
    if (value != "json" && value != "text")
      throw bad("expected 'json' or 'text', got '" + value + "'");
    cfg.output = value;
  } else if (key == "out") {
    cfg.out_path = value;
  } else {
    throw bad("unknown key");
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* e = std::getenv("HARMONICA_SEED");
  if (e == nullptr || *e == '\0') return std::nullopt;
  unsigned long long v = 0;
  if (!parse_uint_text(e, v))
    throw UsageError("HARMONICA_SEED must be an unsigned integer");
  return v;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* name) {
  if (!v)
    throw ConfigError(0, name,
                      std::string("missing required field '") + name + "'");
  return *v;
}

HarmonicParams make_params(const RunConfig& cfg, double m,
                           std::uint64_t seed) {
  HarmonicParams p;
  p.m = m;
  p.alpha = cfg.alpha.value_or(1.0);
  p.tol = cfg.tol.value_or(1e-9);
  p.samples = cfg.samples.value_or(17);
  p.grid_t = cfg.grid_t.value_or(9);
  p.trials = cfg.trials.value_or(0);
  p.seed = seed;
  return p;
}

// f1/f2 name the endpoints; a single f builds the degenerate [f, f].
std::pair<std::string, std::string> endpoint_texts(const RunConfig& cfg) {
  if (cfg.f1 || cfg.f2) {
    return {need(cfg.f1, "f1"), need(cfg.f2, "f2")};
  }
  if (!cfg.f)
    throw ConfigError(0, "f1",
                      "missing required field 'f1' (or 'f' for a "
                      "degenerate interval function)");
  return {*cfg.f, *cfg.f};
}

int emit(const RunConfig& cfg, std::ostream& out, const std::string& json,
         const std::string& text, int code) {
  const std::string& payload = cfg.output == "text" ? text : json;
  if (cfg.out_path) {
    std::ofstream f(*cfg.out_path);
    if (!f)
      throw UsageError("cannot open output file '" + *cfg.out_path + "'");
    f << payload << "\n";
  } else {
    out << payload << "\n";
  }
  return code;
}

std::string certification_json(const std::string& command,
                               const std::string& inputs,
                               const ConvexityReport& rep,
                               std::uint64_t seed) {
  JsonObj j;
  j.str("command", command);
  j.raw("inputs", inputs);
  j.str("verdict", to_string(rep.verdict));
  j.raw("margins", "{\"worst\":" + fmt_double(rep.worst_margin) + "}");
  if (rep.counterexample) {
    JsonObj c;
    c.num("x", rep.counterexample->x)
        .num("y", rep.counterexample->y)
        .num("t", rep.counterexample->t);
    j.raw("counterexample", c.done());
  }
  j.integer("samples_checked", rep.samples_checked);
  j.integer("samples_skipped", rep.samples_skipped);
  j.boolean("coverage_warning", rep.coverage_warning);
  j.uinteger("seed", seed);
  j.str("tool_version", tool_version);
  return j.done();
}

std::string certification_text(const std::string& command,
                               const ConvexityReport& rep,
                               std::uint64_t seed) {
  std::string s = command + ": ";
  s += to_string(rep.verdict);
  s += "\nworst_margin: " + fmt_text(rep.worst_margin);
  if (rep.counterexample) {
    s += "\ncounterexample: x=" + fmt_text(rep.counterexample->x) +
         " y=" + fmt_text(rep.counterexample->y) +
         " t=" + fmt_text(rep.counterexample->t);
  }
  s += "\nsamples_checked: " + std::to_string(rep.samples_checked);
  s += "\nsamples_skipped: " + std::to_string(rep.samples_skipped);
  s += std::string("\ncoverage_warning: ") +
       (rep.coverage_warning ? "true" : "false");
  s += "\nseed: " + std::to_string(seed);
  return s;
}

int certification_exit(const ConvexityReport& rep) {
  return rep.verdict == Verdict::falsified ? 1 : 0;
}

int cmd_check_fn(const RunConfig& cfg, std::uint64_t seed,
                 std::ostream& out) {
  const std::string& ftext = need(cfg.f, "f");
  const Expr f = parse(ftext);
  const Interval dom = need(cfg.domain, "domain");
  const double m = need(cfg.m, "m");
  const HarmonicParams prm = make_params(cfg, m, seed);
  const ConvexityReport rep = check_scalar(f, dom, prm);
  JsonObj in;
  in.str("f", ftext)
      .raw("domain", interval_json(dom))
      .num("m", prm.m)
      .num("alpha", prm.alpha)
      .num("tol", prm.tol)
      .integer("samples", prm.samples)
      .integer("grid_t", prm.grid_t)
      .integer("trials", prm.trials);
  return emit(cfg, out, certification_json("check-fn", in.done(), rep, seed),
              certification_text("check-fn", rep, seed),
              certification_exit(rep));
}

int cmd_check_svf(const RunConfig& cfg, std::uint64_t seed,
                  std::ostream& out) {
  const auto texts = endpoint_texts(cfg);
  const Expr e1 = parse(texts.first);
  const Expr e2 = parse(texts.second);
  const Interval dom = need(cfg.domain, "domain");
  const double itol = cfg.tol.value_or(1e-9);
  const int vsamples =
      cfg.samples.value_or(IntervalFn::default_validation_samples);
  const IntervalFn f = from_endpoints(e1, e2, dom, vsamples, itol);
  const double m = need(cfg.m, "m");
  const HarmonicParams prm = make_params(cfg, m, seed);
  const ConvexityReport rep = check_svf(f, prm);
  JsonObj in;
  in.str("f1", texts.first)
      .str("f2", texts.second)
      .raw("domain", interval_json(dom))
      .num("m", prm.m)
      .num("alpha", prm.alpha)
      .num("tol", prm.tol)
      .integer("samples", prm.samples)
      .integer("grid_t", prm.grid_t)
      .integer("trials", prm.trials);
  return emit(cfg, out, certification_json("check-svf", in.done(), rep, seed),
              certification_text("check-svf", rep, seed),
              certification_exit(rep));
}

int cmd_check_set(const RunConfig& cfg, std::uint64_t seed,
                  std::ostream& out) {
  const Interval s = need(cfg.domain, "domain");
  const double m = need(cfg.m, "m");
  const HarmonicParams prm = make_params(cfg, m, seed);
  const ConvexityReport rep = is_m_convex_set(s, m, prm);
  JsonObj in;
  in.raw("domain", interval_json(s))
      .num("m", m)
      .num("tol", prm.tol)
      .integer("samples", prm.samples)
      .integer("grid_t", prm.grid_t)
      .integer("trials", prm.trials);
  return emit(cfg, out, certification_json("check-set", in.done(), rep, seed),
              certification_text("check-set", rep, seed),
              certification_exit(rep));
}

int cmd_starshaped(const RunConfig& cfg, std::uint64_t seed,
                   std::ostream& out) {
  const Interval s = need(cfg.domain, "domain");
  const HarmonicParams prm = make_params(cfg, cfg.m.value_or(1.0), seed);
  const ConvexityReport rep = is_starshaped(s, prm);
  JsonObj in;
  in.raw("domain", interval_json(s))
      .num("tol", prm.tol)
      .integer("grid_t", prm.grid_t)
      .integer("trials", prm.trials);
  return emit(cfg, out, certification_json("starshaped", in.done(), rep, seed),
              certification_text("starshaped", rep, seed),
              certification_exit(rep));
}

int cmd_integrate(const RunConfig& cfg, std::uint64_t seed,
                  std::ostream& out) {
  const auto texts = endpoint_texts(cfg);
  const Expr e1 = parse(texts.first);
  const Expr e2 = parse(texts.second);
  const Interval ab = need(cfg.domain, "domain");
  const Interval fdom = cfg.fn_domain.value_or(ab);
  const int vsamples =
      cfg.samples.value_or(IntervalFn::default_validation_samples);
  const IntervalFn f = from_endpoints(e1, e2, fdom, vsamples, 1e-9);
  const double qtol = cfg.tol.value_or(default_quad_tol);
  const AumannResult res = aumann_mean_detail(f, ab.lo, ab.hi, qtol);
  JsonObj in;
  in.str("f1", texts.first)
      .str("f2", texts.second)
      .raw("domain", interval_json(ab))
      .raw("fn_domain", interval_json(fdom))
      .num("tol", qtol);
  JsonObj j;
  j.str("command", "integrate")
      .raw("inputs", in.done())
      .raw("value", interval_json(res.mean))
      .num("abs_error_estimate", std::max(res.lower.abs_error_estimate,
                                          res.upper.abs_error_estimate))
      .integer("evaluations",
               res.lower.evaluations + res.upper.evaluations)
      .uinteger("seed", seed)
      .str("tool_version", tool_version);
  std::string text = "integrate: " + interval_text(res.mean);
  text += "\nabs_error_estimate: " +
          fmt_text(std::max(res.lower.abs_error_estimate,
                            res.upper.abs_error_estimate));
  text += "\nevaluations: " +
          std::to_string(res.lower.evaluations + res.upper.evaluations);
  return emit(cfg, out, j.done(), text, 0);
}

int cmd_hh(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
  const auto texts = endpoint_texts(cfg);
  const Expr e1 = parse(texts.first);
  const Expr e2 = parse(texts.second);
  const Interval ab = need(cfg.domain, "domain");
  const double m = need(cfg.m, "m");
  if (!(m > 0.0 && m <= 1.0))
    throw std::invalid_argument("hh: m must be in (0, 1]");
  if (!(ab.lo > 0.0 && ab.lo < ab.hi))
    throw std::invalid_argument("hh: domain must satisfy 0 < a < b");
  const Interval fdom = cfg.fn_domain.value_or(Interval(ab.lo, ab.hi / m));
  const double itol = cfg.tol.value_or(1e-9);
  const int vsamples =
      cfg.samples.value_or(IntervalFn::default_validation_samples);
  const IntervalFn f = from_endpoints(e1, e2, fdom, vsamples, itol);
  const HHReport rep = check_hh_setvalued(f, ab.lo, ab.hi, m, itol);
  JsonObj in;
  in.str("f1", texts.first)
      .str("f2", texts.second)
      .raw("domain", interval_json(ab))
      .raw("fn_domain", interval_json(fdom))
      .num("m", m)
      .num("tol", itol);
  JsonObj val;
  val.raw("integral_mean", interval_json(rep.integral_mean))
      .raw("half_sum_ab", interval_json(rep.half_sum_ab))
      .raw("half_sum_ba", interval_json(rep.half_sum_ba))
      .num("min_inf_point", rep.min_inf_point)
      .boolean("min_inf_member", rep.min_inf_member);
  JsonObj margins;
  margins.num("ab", rep.margin_ab).num("ba", rep.margin_ba);
  JsonObj j;
  j.str("command", "hh")
      .raw("inputs", in.done())
      .str("verdict", to_string(rep.verdict))
      .raw("value", val.done())
      .raw("margins", margins.done())
      .uinteger("seed", seed)
      .str("tool_version", tool_version);
  std::string text = std::string("hh: ") + to_string(rep.verdict);
  text += "\nintegral_mean: " + interval_text(rep.integral_mean);
  text += "\nhalf_sum_ab: " + interval_text(rep.half_sum_ab) + " (margin " +
          fmt_text(rep.margin_ab) + ")";
  text += "\nhalf_sum_ba: " + interval_text(rep.half_sum_ba) + " (margin " +
          fmt_text(rep.margin_ba) + ")";
  text += "\nmin_inf_point: " + fmt_text(rep.min_inf_point) +
          (rep.min_inf_member ? " (member)" : " (not a member)");
  return emit(cfg, out, j.done(), text,
              rep.verdict == HHVerdict::holds_within_tol ? 0 : 1);
}

int cmd_hh_scalar(const RunConfig& cfg, std::uint64_t seed,
                  std::ostream& out) {
  const std::string& ftext = need(cfg.f, "f");
  const Expr f = parse(ftext);
  const Interval ab = need(cfg.domain, "domain");
  const double m = need(cfg.m, "m");
  const double tol = cfg.tol.value_or(1e-9);
  if (!(ab.lo > 0.0 && ab.lo < ab.hi))
    throw std::invalid_argument("hh-scalar: domain must satisfy 0 < a < b");
  const ScalarHHReport rep = check_hh_scalar(f, ab.lo, ab.hi, m, tol);
  JsonObj in;
  in.str("f", ftext)
      .raw("domain", interval_json(ab))
      .num("m", m)
      .num("tol", tol);
  JsonObj j;
  j.str("command", "hh-scalar")
      .raw("inputs", in.done())
      .str("verdict", rep.holds ? "HOLDS_WITHIN_TOL" : "VIOLATED")
      .num("lhs", rep.lhs)
      .num("rhs", rep.rhs)
      .raw("margins", "{\"rhs_minus_lhs\":" + fmt_double(rep.rhs - rep.lhs) + "}")
      .uinteger("seed", seed)
      .str("tool_version", tool_version);
  std::string text = std::string("hh-scalar: ") +
                     (rep.holds ? "HOLDS_WITHIN_TOL" : "VIOLATED");
  text += "\nlhs: " + fmt_text(rep.lhs);
  text += "\nrhs: " + fmt_text(rep.rhs);
  return emit(cfg, out, j.done(), text, rep.holds ? 0 : 1);
}

int cmd_ops(const RunConfig& cfg, std::uint64_t seed, std::ostream& out) {
  const std::string& op = need(cfg.op, "op");
  JsonObj in;
  in.str("op", op);
  if (op == "add" || op == "mul" || op == "hull") {
    const Interval a = need(cfg.a, "a");
    const Interval b = need(cfg.b, "b");
    const Interval v = op == "add" ? add(a, b)
                       : op == "mul" ? mul(a, b)
                                     : hull(a, b);
    in.raw("a", interval_json(a)).raw("b", interval_json(b));
    JsonObj j;
    j.str("command", "ops")
        .raw("inputs", in.done())
        .raw("value", interval_json(v))
        .uinteger("seed", seed)
        .str("tool_version", tool_version);
    return emit(cfg, out, j.done(), "ops " + op + ": " + interval_text(v), 0);
  }
  if (op == "scale") {
    const double c = need(cfg.c, "c");
    const Interval a = need(cfg.a, "a");
    const Interval v = scale(c, a);
    in.raw("a", interval_json(a)).num("c", c);
    JsonObj j;
    j.str("command", "ops")
        .raw("inputs", in.done())
        .raw("value", interval_json(v))
        .uinteger("seed", seed)
        .str("tool_version", tool_version);
    return emit(cfg, out, j.done(), "ops scale: " + interval_text(v), 0);
  }
  if (op == "subset") {
    const Interval a = need(cfg.a, "a");
    const Interval b = need(cfg.b, "b");
    const double tol = cfg.tol.value_or(1e-9);
    const Inclusion inc = subset_within(a, b, tol);
    in.raw("a", interval_json(a)).raw("b", interval_json(b)).num("tol", tol);
    JsonObj j;
    j.str("command", "ops")
        .raw("inputs", in.done())
        .str("verdict", inc.holds ? "SUBSET" : "NOT_SUBSET")
        .raw("margins", "{\"worst\":" + fmt_double(inc.margin) + "}")
        .uinteger("seed", seed)
        .str("tool_version", tool_version);
    const std::string text = std::string("ops subset: ") +
                             (inc.holds ? "SUBSET" : "NOT_SUBSET") +
                             " (margin " + fmt_text(inc.margin) + ")";
    return emit(cfg, out, j.done(), text, inc.holds ? 0 : 1);
  }
  throw ConfigError(0, "op",
                    "unknown op '" + op +
                        "' (expected add, scale, mul, hull or subset)");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(0, "", "cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string entry = trim(line);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "",
                        "config line " + std::to_string(lineno) +
                            ": expected key=value");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    if (key.empty())
      throw ConfigError(lineno, "",
                        "config line " + std::to_string(lineno) +
                            ": empty key");
    apply_config(cfg, key, value, lineno);
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"interval-valued functions under harmonic m-convexity"};
  app.name("harmonica");
  app.require_subcommand(0, 1);
  static const std::pair<const char*, const char*> kCommands[] = {
      {"check-fn", "certify scalar harmonic (alpha,m)-convexity on samples"},
      {"check-svf",
       "certify t*F(y) + m*(1-t)*F(x) inside F(combination) on samples"},
      {"check-set", "certify t*b + m*(1-t)*a membership for an interval"},
      {"starshaped", "certify t*S inside S for t in (0,1]"},
      {"integrate", "integral average of an interval function"},
      {"hh", "endpoint half-sums against the integral average"},
      {"hh-scalar", "scalar endpoint half-sums against the integral average"},
      {"ops", "interval arithmetic: add, scale, mul, hull, subset"},
  };
  for (const auto& c : kCommands) {
    CLI::App* sc = app.add_subcommand(c.first, c.second);
    sc->fallthrough();
  }

  std::optional<std::string> o_config, o_f, o_f1, o_f2, o_domain, o_fn_domain,
      o_op, o_a, o_b, o_output, o_out;
  std::optional<double> o_m, o_alpha, o_tol, o_c;
  std::optional<int> o_samples, o_grid_t, o_trials;
  std::optional<std::uint64_t> o_seed;

  app.add_option("--config", o_config, "flat key=value config file");
  app.add_option("--f", o_f, "expression in x (single endpoint)");
  app.add_option("--f1", o_f1, "lower endpoint expression");
  app.add_option("--f2", o_f2, "upper endpoint expression");
  app.add_option("--domain", o_domain, "interval 'lo:hi'");
  app.add_option("--fn-domain", o_fn_domain,
                 "function domain 'lo:hi' (defaults per command)");
  app.add_option("--m", o_m, "harmonic modulus in (0,1]");
  app.add_option("--alpha", o_alpha, "convexity exponent in [0,1] (default 1)");
  app.add_option("--tol", o_tol, "tolerance (default 1e-9; 1e-10 quadrature)");
  app.add_option("--samples", o_samples, "spatial grid points (default 17)");
  app.add_option("--grid-t", o_grid_t, "t grid points (default 9)");
  app.add_option("--trials", o_trials, "extra random samples (default 0)");
  app.add_option("--seed", o_seed, "RNG seed (default HARMONICA_SEED or 0)");
  app.add_option("--op", o_op, "ops: add, scale, mul, hull, subset");
  app.add_option("--a", o_a, "ops operand interval 'lo:hi'");
  app.add_option("--b", o_b, "ops operand interval 'lo:hi'");
  app.add_option("--c", o_c, "ops scale factor");
  app.add_option("--output", o_output, "report format: json or text");
  app.add_option("--out", o_out, "write the report to this file");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("harmonica");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command;
  for (const CLI::App* sc : app.get_subcommands()) command = sc->get_name();

  try {
    RunConfig cfg;
    if (o_config) cfg = load_config(*o_config);

    const auto flag_interval = [&](const std::optional<std::string>& text,
                                   const char* flag) -> std::optional<Interval> {
      if (!text) return std::nullopt;
      Interval v;
      std::string why;
      if (!parse_interval_text(*text, v, why))
        throw UsageError(std::string(flag) + ": " + why + ", got '" + *text +
                         "'");
      return v;
    };

    if (o_f) cfg.f = *o_f;
    if (o_f1) cfg.f1 = *o_f1;
    if (o_f2) cfg.f2 = *o_f2;
    if (const auto v = flag_interval(o_domain, "--domain")) cfg.domain = *v;
    if (const auto v = flag_interval(o_fn_domain, "--fn-domain"))
      cfg.fn_domain = *v;
    if (o_m) cfg.m = *o_m;
    if (o_alpha) cfg.alpha = *o_alpha;
    if (o_tol) cfg.tol = *o_tol;
    if (o_samples) cfg.samples = *o_samples;
    if (o_grid_t) cfg.grid_t = *o_grid_t;
    if (o_trials) cfg.trials = *o_trials;
    if (o_seed) cfg.seed = *o_seed;
    if (o_op) cfg.op = *o_op;
    if (const auto v = flag_interval(o_a, "--a")) cfg.a = *v;
    if (const auto v = flag_interval(o_b, "--b")) cfg.b = *v;
    if (o_output) {
      if (*o_output != "json" && *o_output != "text")
        throw UsageError("--output: expected 'json' or 'text', got '" +
                         *o_output + "'");
      cfg.output = *o_output;
    }
    if (o_out) cfg.out_path = *o_out;
    if (o_c) cfg.c = *o_c;

    if (!command.empty()) cfg.command = command;
    if (cfg.command.empty())
      throw UsageError("no command given; see --help for usage");

    const std::uint64_t seed =
        cfg.seed ? *cfg.seed : env_seed().value_or(0);

    if (cfg.command == "check-fn") return cmd_check_fn(cfg, seed, out);
    if (cfg.command == "check-svf") return cmd_check_svf(cfg, seed, out);
    if (cfg.command == "check-set") return cmd_check_set(cfg, seed, out);
    if (cfg.command == "starshaped") return cmd_starshaped(cfg, seed, out);
    if (cfg.command == "integrate") return cmd_integrate(cfg, seed, out);
    if (cfg.command == "hh") return cmd_hh(cfg, seed, out);
    if (cfg.command == "hh-scalar") return cmd_hh_scalar(cfg, seed, out);
    if (cfg.command == "ops") return cmd_ops(cfg, seed, out);
    throw UsageError("unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return e.category() == ErrorCategory::usage ? 2 : 3;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid argument: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace harmonica
