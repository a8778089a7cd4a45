#include <ostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "commands.hpp"
#include "csv.hpp"

namespace difflat::cli {

namespace {

void add_lattice_options(CLI::App* cmd, LatticeSource& src) {
  cmd->add_option("--basis", src.basis_file, "Lattice file (dim/basis record)");
  cmd->add_option("--preset", src.preset, "Built-in lattice: integers, square, rectangular, hexagonal, cubic");
}

void add_rule_options(CLI::App* cmd, RuleSource& src) {
  cmd->add_option("--rule", src.name,
                  "Weight rule: constant, indicator_checkerboard, visible_points, k_free_integers, bernoulli");
  cmd->add_option("--param", src.params, "Rule parameter key=value (repeatable)");
}

void print_schemas(std::ostream& out, std::initializer_list<const char*> names) {
  bool first = true;
  for (const char* name : names) {
    if (!first) out << '\n';
    first = false;
    print_schema(out, schema(name));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Autocorrelation and diffraction of weighted Dirac combs on lattices", "difflat"};
  app.require_subcommand(0, 1);
  bool all_schemas = false;
  app.add_flag("--schema", all_schemas, "Print every CSV column contract and exit");

  auto* lattice = app.add_subcommand("lattice", "Lattice utilities");
  lattice->require_subcommand(1);
  LatticeInfoOptions info;
  auto* info_cmd = lattice->add_subcommand("info", "Density, packing and covering radii, dual basis");
  add_lattice_options(info_cmd, info.lattice);
  info_cmd->add_option("--covering-grid", info.covering_grid, "Grid points per axis for the covering-radius search");

  auto* comb = app.add_subcommand("comb", "Weighted comb utilities");
  comb->require_subcommand(1);
  CombGenOptions gen;
  auto* gen_cmd = comb->add_subcommand("gen", "Tabulate a weight rule inside a ball and write a comb file");
  add_lattice_options(gen_cmd, gen.lattice);
  add_rule_options(gen_cmd, gen.rule);
  gen_cmd->add_option("--radius", gen.radius, "Cutoff radius")->required();
  gen_cmd->add_option("--out", gen.out, "Output comb file (default: standard output)");

  AutocorrOptions ac;
  double z_max = -1.0;
  double window = 0.0;
  bool ac_schema = false;
  auto* ac_cmd = app.add_subcommand("autocorr", "Autocorrelation table, or a convergence scan with --rule/--z/--radii");
  ac_cmd->add_option("--comb", ac.comb_file, "Comb file");
  ac_cmd->add_option("--zmax", z_max, "Largest |z| in the table");
  ac_cmd->add_option("--variant", ac.variant, "pair or single")->capture_default_str();
  ac_cmd->add_option("--window", window, "Summation window radius (default: comb cutoff)");
  add_lattice_options(ac_cmd, ac.lattice);
  add_rule_options(ac_cmd, ac.rule);
  ac_cmd->add_option("--z", ac.z, "Difference vector for a scan, e.g. 1,0");
  ac_cmd->add_option("--radii", ac.radii, "Scan radii, e.g. 25,50,100");
  ac_cmd->add_option("--out", ac.out, "Output CSV (default: standard output)");
  ac_cmd->add_flag("--schema", ac_schema, "Print the CSV column contract and exit");

  DiffractOptions df;
  double sigma = 0.0;
  bool df_schema = false;
  auto* df_cmd = app.add_subcommand("diffract", "Intensity on a uniform grid of one dual fundamental domain");
  df_cmd->add_option("--comb", df.comb_file, "Comb file");
  df_cmd->add_option("--grid", df.grid, "Grid points per axis")->capture_default_str();
  df_cmd->add_option("--domain", df.domain, "parallelepiped or voronoi")->capture_default_str();
  df_cmd->add_option("--sigma", sigma, "Gaussian scatterer width");
  df_cmd->add_option("--out", df.out, "Output CSV (default: standard output)");
  df_cmd->add_flag("--schema", df_schema, "Print the CSV column contract and exit");

  BraggOptions bg;
  bool bg_schema = false;
  auto* bg_cmd = app.add_subcommand("bragg", "Bragg amplitude ladders at dual-lattice points");
  add_lattice_options(bg_cmd, bg.lattice);
  add_rule_options(bg_cmd, bg.rule);
  bg_cmd->add_option("--kstar", bg.kstar, "Dual-basis coordinates, e.g. 1,0 (repeatable)");
  bg_cmd->add_option("--radii", bg.radii, "Radii, e.g. 50,100,200");
  bg_cmd->add_option("--out", bg.out, "Output CSV (default: standard output)");
  bg_cmd->add_flag("--schema", bg_schema, "Print the CSV column contract and exit");

  VerifyOptions vf;
  bool vf_schema = false;
  auto* vf_cmd = app.add_subcommand("verify", "Run a verification suite; exit 1 on a tolerance breach");
  vf_cmd->add_option("--suite", vf.suite, "periodicity, complement, homometry or poisson");
  vf_cmd->add_option("--config", vf.config_file, "INI configuration file");
  vf_cmd->add_option("--set", vf.overrides, "Override section.key=value (repeatable, wins over the file)");
  vf_cmd->add_option("--out", vf.out, "Residual CSV");
  vf_cmd->add_flag("--schema", vf_schema, "Print the CSV column contracts and exit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (all_schemas) {
      for (std::size_t i = 0; i < schemas().size(); ++i) {
        if (i) out << '\n';
        print_schema(out, schemas()[i]);
      }
      return kSuccess;
    }
    if (info_cmd->parsed()) return lattice_info(info, out);
    if (gen_cmd->parsed()) return comb_gen(gen, out);
    if (ac_cmd->parsed()) {
      if (ac_schema) {
        print_schemas(out, {"autocorr", "autocorr-scan"});
        return kSuccess;
      }
      const bool scan = !ac.rule.name.empty() || !ac.z.empty() || !ac.radii.empty();
      if (!scan && z_max < 0.0) throw ConfigError("--zmax is required");
      ac.z_max = std::max(z_max, 0.0);
      if (ac_cmd->count("--window") > 0) ac.window = window;
      return autocorr(ac, out);
    }
    if (df_cmd->parsed()) {
      if (df_schema) {
        print_schemas(out, {"diffract"});
        return kSuccess;
      }
      if (df_cmd->count("--sigma") > 0) df.sigma = sigma;
      return diffract(df, out);
    }
    if (bg_cmd->parsed()) {
      if (bg_schema) {
        print_schemas(out, {"bragg"});
        return kSuccess;
      }
      return bragg(bg, out);
    }
    if (vf_cmd->parsed()) {
      if (vf_schema) {
        print_schemas(out, {"verify-periodicity", "verify-complement", "verify-homometry", "verify-poisson"});
        return kSuccess;
      }
      if (vf.suite.empty()) throw ConfigError("--suite is required");
      return verify(vf, out);
    }
    out << app.help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "difflat: error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace difflat::cli
