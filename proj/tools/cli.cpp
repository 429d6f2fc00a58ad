#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include "hgcm/catalog.hpp"
#include "hgcm/engine.hpp"
#include "hgcm/goldens.hpp"

namespace hgcm::cli {

namespace {

struct EnumerateConfig {
  std::int64_t lambda_max = 6;
  std::string mode = "elliptic";
  std::optional<std::string> r;
  std::size_t max_sides = 32;
  std::string format = "table";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool untwisted_only = false;
  bool noncompact_only = false;
};

struct VerifyConfig {
  bool skip_engine = false;
  std::optional<std::string> goldens_dir;
  std::int64_t lambda_max = 6;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

std::string matrix_text(const IntMatrix& m, const std::string& indent) {
  std::size_t width = 1;
  for (const auto& row : m)
    for (auto v : row) width = std::max(width, std::to_string(v).size());
  std::ostringstream os;
  for (const auto& row : m) {
    os << indent;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const std::string v = std::to_string(row[j]);
      os << (j ? " " : "") << std::string(width - v.size(), ' ') << v;
    }
    os << '\n';
  }
  return os.str();
}

std::string flags_text(const ClassificationFlags& f, const SymmetryGroup& g) {
  return "type=" + to_string(f.type) + " compact=" + (f.compact ? "yes" : "no") +
         " untwisted=" + (f.untwisted ? "yes" : "no") + " symmetry=" + g.name() + " (order " +
         std::to_string(g.order) + ")";
}

bool keep(const CatalogRecord& rec, const EnumerateConfig& c) {
  return (!c.untwisted_only || rec.flags.untwisted) && (!c.noncompact_only || !rec.flags.compact);
}

void emit_records(const std::vector<CatalogRecord>& records, const EnumerateConfig& c, std::ostream& out) {
  bool first = true;
  for (const auto& rec : records) {
    if (!keep(rec, c)) continue;
    if (c.format == "records") {
      out << to_record_line(rec) << '\n';
    } else {
      out << (first ? "" : "\n") << to_table_block(rec.r, rec.table);
    }
    first = false;
  }
}

int cmd_enumerate(const EnumerateConfig& c, std::ostream& out, std::ostream& err) {
  RunOptions opts;
  opts.lambda_max = c.lambda_max;
  opts.max_sides = c.max_sides;
  opts.jobs = c.jobs;
  if (c.r) {
    try {
      opts.r_filter = Rational::parse(*c.r);
    } catch (const std::exception& e) {
      err << "hgcm: --r: " << e.what() << '\n';
      return usage;
    }
  }
  if (c.mode == "elliptic") {
    const EllipticRun run = run_elliptic(opts);
    emit_records(run.records, c, out);
    for (const auto& r : run.capped_radii) err << "hgcm: max-sides cap reached at r = " << r << '\n';
    return run.cap_hit() ? cap_hit : ok;
  }
  if (opts.r_filter && !opts.r_filter->is_zero()) {
    err << "hgcm: parabolic mode only searches r = 0\n";
    return usage;
  }
  const ParabolicReport rep = run_parabolic(opts);
  emit_records(rep.closed, c, out);
  for (const auto& p : rep.periodic) {
    if (c.format == "records") {
      nlohmann::ordered_json j;
      j["periodic"] = p.period;
      j["signature"] = p.signature;
      j["witness_lambda"] = p.witness.lambdas();
      out << j.dump() << '\n';
    } else {
      out << "\nperiodic chain, period " << p.period << ":";
      for (auto v : p.signature) out << ' ' << v;
      out << '\n';
    }
  }
  if (rep.capped_chains > 0) {
    err << "hgcm: " << rep.capped_chains << " chains reached the max-sides cap\n";
    return cap_hit;
  }
  return ok;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  std::vector<Table1Row> blocks;
  try {
    blocks = parse_golden_blocks(read_file(path));
  } catch (const std::exception& e) {
    err << "hgcm: " << path << ": " << e.what() << '\n';
    return usage;
  }
  if (blocks.empty()) {
    err << "hgcm: " << path << ": no blocks\n";
    return usage;
  }
  bool all_valid = true;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Table1Row& block = blocks[b];
    out << "block " << b + 1 << " (line " << block.line << "), r = " << block.r << ": ";
    std::vector<CheckFailure> failures;
    std::optional<PolygonDatum> d;
    RealizationReport rep;
    try {
      d = datum_from_table(block.table);
      rep = verify_realization(*d);
      failures = rep.failures;
      if (rep.weyl && rep.weyl->r != block.r)
        failures.push_back({"weyl-square", "recomputed r = " + rep.weyl->r.to_string()});
    } catch (const std::exception& e) {
      failures.push_back({"decode", e.what()});
    }
    if (!failures.empty()) {
      all_valid = false;
      out << "invalid\n";
      for (const auto& f : failures) out << "  [" << f.check << "] " << f.detail << '\n';
      continue;
    }
    out << "valid\n";
    out << "  A =\n" << matrix_text(cartan_matrix(*d).entries, "    ");
    out << "  B =\n" << matrix_text(symmetrized_cartan(*d).entries, "    ");
    out << "  " << flags_text(classify_flags(*d, *rep.weyl), symmetry_group(*d)) << '\n';
  }
  return all_valid ? ok : failed;
}

void summary(std::ostream& out, const std::string& name, const std::vector<std::string>& items, const std::string& extra) {
  out << (items.empty() ? "[ok]   " : "[FAIL] ") << name;
  if (!extra.empty()) out << " (" << extra << ")";
  out << '\n';
  for (const auto& item : items) out << "         " << item << '\n';
}

int cmd_verify(const VerifyConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<Table1Row> table;
  std::vector<NamedMatrix> matrices;
  std::vector<LatticeFixture> fixtures;
  try {
    if (c.goldens_dir) {
      table = parse_golden_blocks(read_file(*c.goldens_dir + "/table1.txt"));
      matrices = parse_theorem_matrices(read_file(*c.goldens_dir + "/theorem_matrices.txt"));
      fixtures = parse_lattice_fixtures(read_file(*c.goldens_dir + "/lattice_fixtures.txt"), matrices);
    } else {
      table = table1_catalog();
      matrices = theorem_matrices();
      fixtures = lattice_fixtures();
    }
  } catch (const std::exception& e) {
    err << "hgcm: cannot load goldens: " << e.what() << '\n';
    return failed;
  }
  bool all_ok = true;

  const GoldenReport t = verify_table1(table);
  std::vector<std::string> items;
  for (const auto& f : t.failures) items.push_back("[" + f.check + "] " + f.detail);
  summary(out, "table1 self-consistency", items, std::to_string(table.size()) + " rows");
  all_ok = all_ok && t.ok();

  std::size_t passed = 0;
  items.clear();
  for (const auto& f : fixtures) {
    const GoldenReport rep = verify_fixture(f);
    if (rep.ok()) ++passed;
    for (const auto& x : rep.failures) items.push_back(rep.subject + ": [" + x.check + "] " + x.detail);
  }
  summary(out, "lattice fixtures", items, std::to_string(passed) + "/" + std::to_string(fixtures.size()) + " passed");
  all_ok = all_ok && items.empty();

  if (c.skip_engine) {
    out << "[skip] engine cross-check\n";
  } else {
    RunOptions opts;
    opts.lambda_max = c.lambda_max;
    opts.jobs = c.jobs;
    const EllipticRun run = run_elliptic(opts);
    const CrossCheckReport x = cross_check(run.records, table, matrices);
    items.clear();
    for (const auto& s : x.missing_from_engine) items.push_back("not produced by the engine: " + s);
    for (const auto& s : x.missing_from_golden) items.push_back("not in the golden table: " + s);
    for (const auto& s : x.mismatched) items.push_back("mismatch: " + s);
    for (const auto& r : run.capped_radii) items.push_back("max-sides cap reached at r = " + r.to_string());
    summary(out, "engine cross-check", items,
            "lambda_max " + std::to_string(c.lambda_max) + ", " + std::to_string(run.records.size()) + " records, " +
                std::to_string(x.matched) + " matched");
    all_ok = all_ok && items.empty();
  }
  return all_ok ? ok : failed;
}

// "--r -7/18" would otherwise be read as an unknown short option.
std::vector<std::string> join_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--r" && i + 1 < args.size() && args[i + 1].size() > 1 && args[i + 1][0] == '-' &&
        std::isdigit(static_cast<unsigned char>(args[i + 1][1]))) {
      out.push_back("--r=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-3 hyperbolic generalized Cartan matrices with lattice Weyl vector", "hgcm"};
  app.require_subcommand(1);

  EnumerateConfig ec;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate geometric realizations");
  enumerate->add_option("--lambda-max", ec.lambda_max, "Upper bound on twisting coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  enumerate->add_option("--mode", ec.mode, "elliptic (r < 0) or parabolic (r = 0)")
      ->check(CLI::IsMember({"elliptic", "parabolic"}))
      ->capture_default_str();
  enumerate->add_option("--r", ec.r, "Only search this Weyl square, as p/q");
  enumerate->add_option("--max-sides", ec.max_sides, "Abandon chains with this many sides")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20))
      ->capture_default_str();
  enumerate->add_option("--format", ec.format, "table or records")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();
  enumerate->add_option("--jobs", ec.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  enumerate->add_flag("--untwisted-only", ec.untwisted_only, "Only records with all lambda = 1");
  enumerate->add_flag("--noncompact-only", ec.noncompact_only, "Only records with no adjacent pairing -2");

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Verify embedded golden data and the engine against it");
  verify->add_flag("--skip-engine", vc.skip_engine, "Only check the static golden data");
  verify->add_option("--goldens-dir", vc.goldens_dir, "Read golden files from this directory")->check(CLI::ExistingDirectory);
  verify->add_option("--lambda-max", vc.lambda_max, "Bound for the engine run")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--jobs", vc.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate realizations given in the golden text format");
  check->add_option("file", check_path, "File of `r = p/q` blocks")->required();

  std::vector<std::string> args = join_negative_values(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "hgcm: " << e.what() << '\n';
    if (auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front()) err << sub->help();
    return usage;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(ec, out, err);
    if (verify->parsed()) return cmd_verify(vc, out, err);
    return cmd_check(check_path, out, err);
  } catch (const std::exception& e) {
    err << "hgcm: " << e.what() << '\n';
    return failed;
  }
}

}  // namespace hgcm::cli
