#include "mrlrc/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "mrlrc/codes.hpp"
#include "mrlrc/errors.hpp"
#include "mrlrc/mrlrc.hpp"
#include "mrlrc/sdss.hpp"
#include "textio.hpp"

namespace mrlrc {
namespace {

constexpr std::uint64_t kSampleSeed = 0x6d726c7263ULL;

struct Options {
  std::uint32_t p = 2, a = 1;
  std::size_t r = 0, h = 0, delta = 0, n = 0, u = 0, m = 0;
  std::string method = "direct";
  std::string sdss = "mds";
  std::string inner;
  std::string out, in, code, erasures, achieved;
  std::uint64_t sample = 0, budget = 0;
  bool seedless = false;
};

struct Presence {
  CLI::Option* r = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* m = nullptr;
  CLI::Option* u = nullptr;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "' for reading");
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw FormatError("failed to write '" + path + "'");
}

std::string first_line(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

Budget budget_of(const Options& o) {
  auto b = Budget::from_env();
  if (o.budget != 0) b.subsets = o.budget;
  return b;
}

std::uint64_t seed_of(const Options& o) {
  if (!o.seedless) return kSampleSeed;
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

std::uint64_t power(std::uint64_t base, std::uint64_t e) {
  std::uint64_t x = 1;
  while (e-- > 0) x *= base;
  return x;
}

struct Inner {
  FieldMatrix matrix;
  std::string label;
};

Inner parse_inner(const std::string& text, const Options& o) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw PreconditionError("--inner must be bch:<r>:<delta> or rs:<r>:<s>");
  const auto kind = text.substr(0, colon);
  const auto nums = textio::parse_u32_list(std::string_view(text).substr(colon + 1), ':');
  if (nums.size() != 2) throw PreconditionError("--inner must be bch:<r>:<delta> or rs:<r>:<s>");
  if (kind == "bch") {
    if (o.p != 2 || o.a != 1) throw PreconditionError("binary BCH inner codes need q = 2");
    std::uint32_t t = 0;
    while ((std::uint64_t{1} << t) - 1 < nums[0]) ++t;
    if ((std::uint64_t{1} << t) - 1 != nums[0]) throw PreconditionError("BCH length must be 2^t - 1");
    return {bch_parity_check(t, nums[1], budget_of(o)), text};
  }
  if (kind == "rs") {
    const auto tower = FieldTower::make(o.p, o.a, 1);
    return {rs_parity_check(tower, Level::mid, nums[0], nums[1]), text};
  }
  throw PreconditionError("unknown inner code kind '" + kind + "'");
}

SubspaceSystem build_system(const Options& o, const Presence& has, std::size_t dim) {
  const BaseField base{o.p, o.a};
  if (o.h == 0) throw PreconditionError("--h is required");
  if (o.sdss == "mds") {
    if (has.n->count() == 0) throw PreconditionError("--n is required for the MDS-based system");
    return mds_construct(base, o.n, dim, o.h);
  }
  if (o.sdss == "gv") {
    if (has.n->count() == 0) throw PreconditionError("--n is required for the greedy system");
    const auto q = FieldTower::make(o.p, o.a, 1).q();
    const auto m = has.m->count() != 0 ? o.m : bounds(q, o.n, dim, o.h).gv_m;
    return gv_greedy(FieldTower::make(o.p, o.a, static_cast<std::uint32_t>(m)), o.n, dim, o.h);
  }
  if (o.sdss == "subfield") {
    if (has.u->count() == 0) throw PreconditionError("--u is required for the subfield-subcode system");
    auto s = subfield_construct(base, o.u, dim, o.h, budget_of(o));
    if (has.n->count() != 0 && o.n != s.n()) {
      throw PreconditionError("the subfield-subcode system has n = 1 + q^(u*r) = " + std::to_string(s.n()));
    }
    return s;
  }
  throw PreconditionError("unknown --sdss method '" + o.sdss + "'");
}

void print_tower(std::ostream& out, const FieldTower& t) { out << "tower " << t.to_string() << "\n"; }

int cmd_sdss(const Options& o, const Presence& has, std::ostream& out) {
  if (has.r->count() == 0) throw PreconditionError("--r is required");
  if (o.out.empty()) throw PreconditionError("--out is required");
  const auto s = build_system(o, has, o.r);
  std::ostringstream file;
  write_sdss(file, s);
  write_file(o.out, file.str());
  out << "sdss=" << o.sdss << " n=" << s.n() << " r=" << s.r() << " h=" << s.h() << " m=" << s.m()
      << " q=" << s.q() << " certified=" << (s.certified() ? 1 : 0);
  if (s.sampled() != 0) out << " sampled=" << s.sampled();
  out << "\n";
  print_tower(out, s.tower());
  return 0;
}

int cmd_construct(const Options& o, const Presence& has, std::ostream& out) {
  if (o.out.empty()) throw PreconditionError("--out is required");
  if (o.delta == 0) throw PreconditionError("--delta is required");
  std::optional<Inner> inner;
  std::size_t r = o.r, dim = o.r;
  if (o.method == "concat") {
    if (o.inner.empty()) throw PreconditionError("--inner is required for the concatenated construction");
    inner = parse_inner(o.inner, o);
    if (has.r->count() != 0 && o.r != inner->matrix.cols()) {
      throw PreconditionError("--r does not match the inner code length");
    }
    r = inner->matrix.cols();
    dim = inner->matrix.rows();
  } else if (o.method == "direct") {
    if (has.r->count() == 0) throw PreconditionError("--r is required");
    if (!o.inner.empty()) throw PreconditionError("--inner only applies to --method concat");
  } else {
    throw PreconditionError("unknown --method '" + o.method + "'");
  }
  auto s = build_system(o, has, dim);
  if (!s.certified()) {
    throw BudgetExceeded("the subspace system could only be checked by sampling; MR assembly needs a certified system");
  }
  const MrCodeSpec spec{s.n(), r, o.h, o.delta, s.tower()};
  const auto p = inner ? build_concatenated(spec, s, inner->matrix) : build_direct(spec, s);

  std::ostringstream sdss_file, mr_file;
  write_sdss(sdss_file, s);
  write_mr(mr_file, p);
  write_file(o.out + ".sdss", sdss_file.str());
  write_file(o.out, mr_file.str());

  out << "N=" << spec.length() << " r=" << spec.r << " h=" << spec.h << " delta=" << spec.delta
      << " ell=" << spec.tower.q() << "^" << spec.tower.m() << " method=" << o.method
      << " certified=" << (s.certified() ? 1 : 0) << "\n";
  out << "sdss=" << o.sdss << " n=" << s.n() << " s=" << s.r() << " m=" << s.m() << " k=" << spec.dimension();
  if (inner) out << " inner=" << inner->label;
  out << "\n";
  print_tower(out, spec.tower);
  return 0;
}

std::string join_sizes(const std::vector<std::size_t>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_elapsed(std::ostream& out, double secs) {
  out << "elapsed=" << std::fixed << std::setprecision(3) << secs << "s\n";
  out.unsetf(std::ios::floatfield);
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.in.empty()) throw PreconditionError("--in is required");
  const auto header = first_line(o.in);
  const auto budget = budget_of(o);
  const auto start = std::chrono::steady_clock::now();
  if (header == "%MRLRC-MR v1") {
    auto in = open_in(o.in);
    const auto p = read_mr(in);
    const auto report = o.sample != 0 ? verify_mr_sampled(p, o.sample, seed_of(o)) : verify_mr(p, budget);
    out << (report.ok ? "ok" : "FAIL") << "\n";
    out << "patterns_checked=" << report.patterns_checked << "\n";
    if (report.sampled != 0) out << "sampled=" << report.sampled << "\n";
    print_elapsed(out, seconds_since(start));
    if (!report.local_mds) out << "counterexample local matrix is not MDS\n";
    if (report.first_failure) {
      std::string groups;
      for (std::size_t g = 0; g < report.first_failure->per_group.size(); ++g) {
        if (g != 0) groups += '|';
        groups += join_sizes(report.first_failure->per_group[g], ',');
      }
      out << "counterexample local=" << groups
          << " extra=" << join_sizes(report.first_failure->extra, ',') << "\n";
    }
    return report.ok ? 0 : 1;
  }
  if (header == "%MRLRC-SDSS v1") {
    auto in = open_in(o.in);
    auto s = read_sdss(in, budget);
    const auto report = o.sample != 0 ? verify_direct_sum_sampled(s, o.sample, seed_of(o))
                                      : verify_direct_sum(s, budget);
    out << (report.ok ? "ok" : "FAIL") << "\n";
    out << "patterns_checked=" << report.subsets_checked << "\n";
    if (report.sampled) out << "sampled=" << o.sample << "\n";
    print_elapsed(out, seconds_since(start));
    if (report.degenerate_group) out << "counterexample degenerate_group=" << *report.degenerate_group << "\n";
    if (report.failing_subset) out << "counterexample subset=" << join_sizes(*report.failing_subset, ',') << "\n";
    return report.ok ? 0 : 1;
  }
  throw FormatError("'" + o.in + "' is neither an MR parity-check file nor a subspace system file");
}

std::size_t achieved_m(const std::string& path, const Options& o) {
  const auto header = first_line(path);
  auto in = open_in(path);
  if (header == "%MRLRC-MR v1") return read_mr(in).spec().tower.m();
  if (header == "%MRLRC-SDSS v1") return read_sdss(in, budget_of(o)).m();
  throw FormatError("'" + path + "' is neither an MR parity-check file nor a subspace system file");
}

int cmd_bounds(const Options& o, const Presence& has, std::ostream& out) {
  if (!is_prime(o.p)) throw PreconditionError("--p must be prime");
  if (has.n->count() == 0 || has.r->count() == 0 || o.h == 0) {
    throw PreconditionError("bounds need --n, --r and --h");
  }
  const auto b = bounds(power(o.p, o.a), o.n, o.r, o.h);
  out << "gv_m=" << b.gv_m << " hamming_lower=" << b.hamming_lower
      << " singleton_lower=" << b.singleton_lower;
  if (!o.achieved.empty()) out << " achieved_m=" << achieved_m(o.achieved, o);
  out << "\n";
  return 0;
}

MrParityCheck load_code(const Options& o) {
  if (o.code.empty()) throw PreconditionError("--code is required");
  auto in = open_in(o.code);
  return read_mr(in);
}

int cmd_encode(const Options& o, std::ostream& out) {
  if (o.in.empty() || o.out.empty()) throw PreconditionError("--in and --out are required");
  const auto p = load_code(o);
  const auto g = generator_from_parity(p);
  auto in = open_in(o.in);
  const auto msg = read_vector(in, p.spec().tower.size(Level::top));
  if (msg.size() != g.rows()) {
    throw FormatError("message has " + std::to_string(msg.size()) + " symbols, expected k = " +
                      std::to_string(g.rows()));
  }
  std::ostringstream file;
  write_vector(file, encode(g, msg));
  write_file(o.out, file.str());
  out << "encoded k=" << g.rows() << " N=" << g.cols() << "\n";
  return 0;
}

int cmd_decode(const Options& o, std::ostream& out) {
  if (o.in.empty() || o.out.empty()) throw PreconditionError("--in and --out are required");
  const auto p = load_code(o);
  auto in = open_in(o.in);
  const auto received = read_vector(in, p.spec().tower.size(Level::top));
  if (received.size() != p.spec().length()) {
    throw FormatError("received word has " + std::to_string(received.size()) + " symbols, expected N = " +
                      std::to_string(p.spec().length()));
  }
  std::vector<std::size_t> erased;
  for (auto e : textio::parse_u32_list(o.erasures, ',')) erased.push_back(e);
  const auto result = erase_decode(p, received, erased);
  switch (result.status) {
    case DecodeStatus::recovered: {
      std::ostringstream file;
      write_vector(file, result.codeword);
      write_file(o.out, file.str());
      out << "recovered erasures=" << erased.size() << "\n";
      return 0;
    }
    case DecodeStatus::undecodable: {
      out << "UNDECODABLE\n";
      out << "certificate=" << textio::join(result.certificate, ',') << "\n";
      return 1;
    }
    case DecodeStatus::inconsistent:
      out << "INCONSISTENT\n";
      return 1;
  }
  return 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximally recoverable LRC construction, verification and erasure coding"};
  app.name("mrlrc");
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  Options o;
  Presence has;

  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic of F_q");
    sub->add_option("--a", o.a, "q = p^a");
  };
  auto shape_opts = [&](CLI::App* sub) -> Presence {
    Presence pr;
    pr.r = sub->add_option("--r", o.r, "locality / subspace dimension");
    sub->add_option("--h", o.h, "global parities / direct-sum order");
    pr.n = sub->add_option("--n", o.n, "number of groups");
    pr.u = sub->add_option("--u", o.u, "subfield degree for --sdss subfield");
    pr.m = sub->add_option("--m", o.m, "ambient dimension for --sdss gv (default: the greedy bound)");
    sub->add_option("--sdss", o.sdss, "subspace system: gv|mds|subfield");
    return pr;
  };
  auto budget_opt = [&](CLI::App* sub) {
    sub->add_option("--budget", o.budget, "enumeration budget (overrides MRLRC_BUDGET)");
  };

  auto* construct = app.add_subcommand("construct", "build an MR parity-check matrix");
  field_opts(construct);
  const auto construct_has = shape_opts(construct);
  construct->add_option("--delta", o.delta, "local parities per group");
  construct->add_option("--method", o.method, "direct|concat");
  construct->add_option("--inner", o.inner, "inner code for concat: bch:<r>:<delta> or rs:<r>:<s>");
  construct->add_option("--out", o.out, "output MR file; the system goes to <out>.sdss");
  budget_opt(construct);

  auto* sdss = app.add_subcommand("sdss", "build a subspace direct sum system");
  field_opts(sdss);
  const auto sdss_has = shape_opts(sdss);
  sdss->add_option("--out", o.out, "output system file");
  budget_opt(sdss);

  auto* verify = app.add_subcommand("verify", "verify an MR or subspace system file");
  verify->add_option("--in", o.in, "input file")->required();
  verify->add_option("--sample", o.sample, "check this many random patterns instead of all");
  verify->add_flag("--seedless", o.seedless, "draw samples from a nondeterministic seed");
  budget_opt(verify);

  auto* bounds_cmd = app.add_subcommand("bounds", "print bounds on the ambient dimension m");
  field_opts(bounds_cmd);
  Presence bounds_has;
  bounds_has.r = bounds_cmd->add_option("--r", o.r, "subspace dimension");
  bounds_cmd->add_option("--h", o.h, "direct-sum order");
  bounds_has.n = bounds_cmd->add_option("--n", o.n, "number of subspaces");
  bounds_cmd->add_option("--achieved", o.achieved, "MR or system file whose m is reported");

  auto* encode_cmd = app.add_subcommand("encode", "encode a message");
  encode_cmd->add_option("--code", o.code, "MR parity-check file")->required();
  encode_cmd->add_option("--in", o.in, "message file (k codes)")->required();
  encode_cmd->add_option("--out", o.out, "codeword file")->required();

  auto* decode_cmd = app.add_subcommand("decode", "fill erased positions of a received word");
  decode_cmd->add_option("--code", o.code, "MR parity-check file")->required();
  decode_cmd->add_option("--in", o.in, "received word file (N codes)")->required();
  decode_cmd->add_option("--erasures", o.erasures, "comma-separated erased positions");
  decode_cmd->add_option("--out", o.out, "recovered codeword file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(o, construct_has, out);
    if (sdss->parsed()) return cmd_sdss(o, sdss_has, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (bounds_cmd->parsed()) return cmd_bounds(o, bounds_has, out);
    if (encode_cmd->parsed()) return cmd_encode(o, out);
    if (decode_cmd->parsed()) return cmd_decode(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace mrlrc
