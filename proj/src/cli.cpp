#include "abelat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "abelat/automorphism.hpp"
#include "abelat/basis_builder.hpp"
#include "abelat/covering.hpp"
#include "abelat/error.hpp"
#include "abelat/groups.hpp"
#include "abelat/lattice.hpp"
#include "abelat/minvec.hpp"

namespace abelat::cli {

namespace {

using nlohmann::json;

const std::vector<std::int64_t> kDefaultTableNs = {3,    4,     5,      6,       20,     50,
                                                 100, 1000, 10000, 100000, 1000000};

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

json columns_json(const IntMatrix& m) {
  json cols = json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) col.push_back(m(r, c).get_si());
    cols.push_back(std::move(col));
  }
  return cols;
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

// Rewrites the two-word spellings "covering table", "covering estimate" and
// "aut verify" into the hyphenated subcommands.
std::vector<std::string> normalise(std::vector<std::string> args) {
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    const std::string pair = args[i] + "-" + args[i + 1];
    if (pair == "covering-table" || pair == "covering-estimate" || pair == "aut-verify") {
      args[i] = pair;
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      break;
    }
    if (!args[i].empty() && args[i][0] != '-') break;
  }
  return args;
}

void emit_error(std::ostream& out, std::ostream& err, bool as_json, std::string_view code,
                const std::string& message) {
  if (as_json) {
    out << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
  } else {
    err << "error: " << message << "\n";
  }
}

int group_info(const FiniteAbelianGroup& g, bool as_json, std::ostream& out) {
  const auto elements = enumerate_elements(g);
  if (as_json) {
    json els = json::array();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      els.push_back({{"index", i},
                     {"residues", elements[i].residues},
                     {"order", g.element_order(static_cast<ElementId>(i))}});
    }
    out << json{{"group", g.to_string()}, {"moduli", g.moduli()}, {"order", g.order()},
                {"n", g.n()}, {"elements", els}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "group " << g.to_string() << "\norder " << g.order() << "\nn " << g.n()
      << "\nelements\n";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out << "  " << i << " " << join(elements[i].residues) << " order "
        << g.element_order(static_cast<ElementId>(i)) << "\n";
  }
  return 0;
}

void print_basis(const LatticeBasis& b, bool as_json, std::ostream& out) {
  const Integer det = bareiss_det(gram(b.matrix()));
  if (as_json) {
    out << json{{"group", b.group().to_string()}, {"rows", b.matrix().rows()},
                {"cols", b.matrix().cols()}, {"columns", columns_json(b.matrix())},
                {"det_gram", det.get_str()}}
               .dump(2)
        << "\n";
  } else {
    write_basis(out, b);
  }
}

int minvec(const FiniteAbelianGroup& g, bool dump, bool as_json, std::ostream& out) {
  const MinimalVectorReport r = minimum_distance(g);
  if (as_json) {
    json j = {{"group", g.to_string()}, {"d_squared", r.d_squared},
              {"count", r.vectors.size()}, {"rank", r.rank}, {"well_rounded", r.well_rounded}};
    if (dump) {
      json vs = json::array();
      for (const auto& v : r.vectors) vs.push_back(v.coords);
      j["vectors"] = vs;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "group " << g.to_string() << "\nd_squared " << r.d_squared << "\ncount "
      << r.vectors.size() << "\nrank " << r.rank << "\nwell_rounded "
      << (r.well_rounded ? "true" : "false") << "\n";
  if (dump && !r.vectors.empty()) {
    std::vector<std::vector<std::int64_t>> cols;
    for (const auto& v : r.vectors) cols.push_back(v.coords);
    write_matrix(out, IntMatrix::from_columns(cols));
  }
  return 0;
}

int build_basis(const FiniteAbelianGroup& g, std::uint64_t seed, const FallbackOptions& opts,
                const std::string& out_file, bool as_json, std::ostream& out) {
  const BuildResult r = build_minimal_basis(g, seed, opts);
  const std::string trace = trace_to_json(r.trace);
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + out_file);
    write_basis(f, r.basis);
  }
  if (as_json) {
    json j = {{"group", g.to_string()}, {"seed", seed},
              {"columns", columns_json(r.basis.matrix())}, {"trace", json::parse(trace)}};
    if (!out_file.empty()) j["out"] = out_file;
    out << j.dump(2) << "\n";
    return 0;
  }
  if (out_file.empty()) write_basis(out, r.basis);
  out << trace << "\n";
  return 0;
}

int verify(const std::string& file, bool as_json, std::ostream& out) {
  std::ifstream f(file);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot read " + file);
  const LatticeBasis b = read_basis(f);
  const Integer det = bareiss_det(gram(b.matrix()));
  const std::int64_t d_sq = minimum_norm_sq(b.group());
  bool minimal = true;
  for (std::size_t c = 0; c < b.matrix().cols(); ++c) {
    Integer s = 0;
    for (std::size_t r = 0; r < b.matrix().rows(); ++r) s += b.matrix()(r, c) * b.matrix()(r, c);
    if (s != d_sq) minimal = false;
  }
  if (as_json) {
    out << json{{"group", b.group().to_string()}, {"valid", true}, {"det_gram", det.get_str()},
                {"d_squared", d_sq}, {"minimal_vectors", minimal}}
               .dump(2)
        << "\n";
  } else {
    out << "valid basis of L(" << b.group().to_string() << ")\ndet_gram " << det.get_str()
        << "\nminimal_vectors " << (minimal ? "true" : "false") << "\n";
  }
  return 0;
}

int covering_table(const std::vector<std::int64_t>& ns, const std::string& format,
                   std::int64_t cap, std::ostream& out) {
  const auto rows = bounds_table(ns, cap);
  auto recursive = [](const CoveringReport& r) -> std::optional<double> {
    if (!r.recursive_sq) return std::nullopt;
    return std::sqrt(r.recursive_sq->get_d());
  };
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"n", r.n}, {"mu_An", r.mu_an}, {"thm14", r.thm14}, {"sha", r.sha}};
      j["recursive_sq"] = r.recursive_sq ? json(r.recursive_sq->get_str()) : json(nullptr);
      j["recursive"] = r.recursive_sq ? json(*recursive(r)) : json(nullptr);
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
    return 0;
  }
  if (format == "csv") {
    out << "n,mu_An,thm14,sha,recursive\n";
    for (const auto& r : rows) {
      auto rec = recursive(r);
      out << r.n << "," << format4(r.mu_an) << "," << format4(r.thm14) << ","
          << format4(r.sha) << "," << (rec ? format4(*rec) : "") << "\n";
    }
    return 0;
  }
  out << std::left << std::setw(9) << "n" << std::setw(11) << "mu(A_n)" << std::setw(11)
      << "thm14" << std::setw(11) << "sha" << "recursive\n";
  for (const auto& r : rows) {
    auto rec = recursive(r);
    out << std::setw(9) << r.n << std::setw(11) << format4(r.mu_an) << std::setw(11)
        << format4(r.thm14) << std::setw(11) << format4(r.sha)
        << (rec ? format4(*rec) : "-") << "\n";
  }
  return 0;
}

int covering_estimate(const FiniteAbelianGroup& g, std::int64_t samples, std::uint64_t seed,
                      bool as_json, std::ostream& out) {
  const DeepHoleEstimate e = deep_hole_estimate(g, samples, seed);
  std::vector<std::string> point;
  for (const auto& x : e.point) point.push_back(x.get_str());
  if (as_json) {
    out << json{{"group", g.to_string()}, {"samples", samples}, {"seed", seed},
                {"estimate", e.value}, {"dist_sq", e.dist_sq.get_str()}, {"point", point}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "group " << g.to_string() << "\nsamples " << samples << "\nseed " << seed
      << "\nestimate " << fixed(e.value, 6) << "\npoint";
  for (const auto& p : e.point) out << " " << fixed(p.get_d(), 6);
  out << "\n";
  return 0;
}

int aut_verify(const FiniteAbelianGroup& g, std::int64_t cap, bool as_json, std::ostream& out) {
  const AutomorphismComparison r = verify_automorphism_correspondence(g, cap);
  if (as_json) {
    out << json{{"group", g.to_string()}, {"equal", r.equal}, {"order", r.order},
                {"generators", r.generators}}
               .dump(2)
        << "\n";
  } else {
    out << "group " << g.to_string() << "\nequal " << (r.equal ? "true" : "false")
        << "\norder " << r.order << "\ngenerators";
    for (const auto& p : r.generators) out << " " << cycle_notation(p);
    out << "\n";
  }
  return r.equal ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> args = normalise(raw_args);
  const bool json_requested = std::find(args.begin(), args.end(), "--json") != args.end();

  CLI::App app{"Lattices attached to finite Abelian groups", "abelat"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  std::string spec;
  std::uint64_t seed = 0;
  bool dump = false;
  std::string out_file;
  std::string in_file;
  FallbackOptions fallback;
  std::vector<std::int64_t> ns = kDefaultTableNs;
  std::string format = "text";
  std::int64_t cap = kRecursiveBoundCap;
  std::int64_t samples = 2000;
  std::int64_t aut_cap = kStabilizerCap;

  auto* info = app.add_subcommand("group-info", "List the elements of G in canonical order");
  info->add_option("group", spec, "Group, e.g. Z2xZ4")->required();

  auto* basis = app.add_subcommand("basis", "Print the canonical basis of L(G)");
  basis->add_option("group", spec, "Group, e.g. Z2xZ4")->required();

  auto* mv = app.add_subcommand("minvec", "Minimal vectors of L(G)");
  mv->add_option("group", spec, "Group, e.g. Z3")->required();
  mv->add_flag("--dump", dump, "List every minimal vector");

  auto* build = app.add_subcommand("build-basis", "Basis of minimal vectors with build trace");
  build->add_option("group", spec, "Group, e.g. Z3xZ5")->required();
  build->add_option("--seed", seed, "Seed for the fallback search")->capture_default_str();
  build->add_option("--out", out_file, "Write the basis to this file");
  build->add_option("--restarts", fallback.restarts, "Fallback restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build->add_option("--swap-factor", fallback.swap_factor, "Fallback swap steps per n^2")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Check a basis file");
  ver->add_option("file", in_file, "Basis file written by build-basis --out")
      ->required()
      ->check(CLI::ExistingFile);

  auto* table = app.add_subcommand("covering-table", "Covering-radius bounds for A_n-sized lattices");
  table->add_option("--n", ns, "Comma-separated dimensions")->delimiter(',');
  table->add_option("--format", format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  table->add_option("--cap", cap, "Largest n for the recursive bound")->capture_default_str();

  auto* est = app.add_subcommand("covering-estimate", "Lower estimate of the covering radius");
  est->add_option("group", spec, "Group, e.g. Z6")->required();
  est->add_option("--samples", samples, "Random starting points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  est->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  auto* aut = app.add_subcommand("aut-verify", "Compare Aut(G) with the coordinate stabilizer");
  aut->add_option("group", spec, "Group, e.g. Z2xZ4")->required();
  aut->add_option("--cap", aut_cap, "Largest n for the permutation search")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    emit_error(out, err, json_requested, error_code_name(ErrorCode::kParse), e.what());
    if (!json_requested) {
      const CLI::App* sub = nullptr;
      for (const auto* s : app.get_subcommands()) sub = s;
      err << (sub ? sub->help() : app.help());
    }
    return 2;
  }

  try {
    if (*table) {
      return covering_table(ns, as_json ? "json" : format, cap, out);
    }
    if (*ver) return verify(in_file, as_json, out);
    const FiniteAbelianGroup g = parse_group(spec);
    if (*info) return group_info(g, as_json, out);
    if (*basis) {
      print_basis(canonical_basis(g), as_json, out);
      return 0;
    }
    if (*mv) return minvec(g, dump, as_json, out);
    if (*build) return build_basis(g, seed, fallback, out_file, as_json, out);
    if (*est) return covering_estimate(g, samples, seed, as_json, out);
    if (*aut) return aut_verify(g, aut_cap, as_json, out);
  } catch (const Error& e) {
    emit_error(out, err, as_json, error_code_name(e.code()), e.what());
    return e.code() == ErrorCode::kParse ? 2 : 1;
  }
  emit_error(out, err, as_json, error_code_name(ErrorCode::kParse), "no subcommand given");
  return 2;
}

}  // namespace abelat::cli
