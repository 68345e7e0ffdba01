#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "basisorder/bounds.hpp"
#include "basisorder/error.hpp"
#include "basisorder/invariants.hpp"
#include "basisorder/order_engine.hpp"
#include "basisorder/serialization.hpp"
#include "basisorder/sweep.hpp"

namespace basisorder {

namespace {

std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream file(path);
    if (!file) throw InvalidArgument("cannot open " + path);
    buf << file.rdbuf();
  }
  return buf.str();
}

void print_invariants(std::ostream& out, const InstanceInvariants& inv) {
  out << "delta(X)   " << (inv.delta_x ? std::to_string(*inv.delta_x) : "undefined") << '\n'
      << "diam(X)    " << inv.diam_x << '\n'
      << "d(X)       " << (inv.d_x ? inv.d_x->to_string() : "undefined") << '\n'
      << "eta(A,X)   " << inv.eta.value << "  (pair " << inv.eta.witness.first << ", "
      << inv.eta.witness.second << ")\n"
      << "mu(A,X)    " << inv.mu.value << "  (y = " << inv.mu.witness << ")\n";
}

void print_report(std::ostream& out, const BoundReport& r) {
  out << "instance   " << r.label << '\n'
      << "G(A)       " << r.h << "  (cofinite from " << r.order_a.cofinite_witness_threshold << ")\n"
      << "G(A\\X)     " << r.g << "  (cofinite from " << r.order_rest.cofinite_witness_threshold << ")\n";
  print_invariants(out, r.invariants);
  out << "density    " << r.density_rest << "  (of A\\X)\n\n";
  out << std::left << std::setw(18) << "bound" << std::setw(8) << "lhs" << std::setw(12) << "rhs"
      << "status\n";
  for (const auto& c : r.checks) {
    out << std::setw(18) << c.name << std::setw(8) << c.lhs << std::setw(12)
        << (c.rhs ? c.rhs->to_string() : "-")
        << (!c.applicable() ? "n/a" : c.satisfied() ? "ok" : "VIOLATED") << '\n';
  }
  out << std::right;
}

void print_summary(std::ostream& out, const SweepSummary& s) {
  auto opt = [](const std::optional<Rational>& r) { return r ? r->to_string() : std::string("-"); };
  out << "records " << s.records << " (written " << s.written << ", skipped " << s.skipped
      << "), errors " << s.errors << ", violations " << s.violations << '\n'
      << "max g/(d h^3) " << opt(s.max_ratio_d) << ", max g/(mu h^2) " << opt(s.max_ratio_mu)
      << ", nominal h: " << opt(s.max_ratio_d_nominal) << ", " << opt(s.max_ratio_mu_nominal) << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"basisorder: exact orders and removal bounds for eventually periodic additive bases"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string set_path;
  std::uint64_t h_cap = kDefaultOrderCap;
  auto* order_cmd = app.add_subcommand("order", "Compute G(A) for a set literal");
  order_cmd->add_option("set", set_path, "Set literal JSON file, or - for stdin")->required();
  order_cmd->add_option("--h-cap", h_cap, "Largest h to try")->check(CLI::PositiveNumber);

  std::string instance_path;
  auto* inv_cmd = app.add_subcommand("invariants", "Compute delta, diam, d, eta, mu for an instance");
  inv_cmd->add_option("instance", instance_path, "Instance JSON file, or - for stdin")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Compute orders and check every removal bound");
  verify_cmd->add_option("instance", instance_path, "Instance JSON file, or - for stdin")->required();
  verify_cmd->add_option("--h-cap", h_cap, "Largest h to try")->check(CLI::PositiveNumber);

  std::uint64_t d = 0, k = 0, h = 0, mu = 0;
  auto* construct_cmd = app.add_subcommand("construct", "Emit a construction instance as JSON");
  construct_cmd->require_subcommand(1);
  auto* sec2_cmd = construct_cmd->add_subcommand("section2", "X = {0,k,...,dk}, A* = {1, dk^2} mod dk^3");
  sec2_cmd->add_option("--d", d, "Progression length minus one")->required()->check(CLI::PositiveNumber);
  sec2_cmd->add_option("--k", k, "Progression step (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
  auto* p41_cmd = construct_cmd->add_subcommand("prop41", "X = {0,1}, A* = {mu, h mu} mod h(h-1)mu+1");
  p41_cmd->set_help_flag("--help", "Print this help message and exit");
  p41_cmd->add_option("--h", h, "Order parameter (>= 2)")->required()->check(CLI::Range(2, 1 << 20));
  p41_cmd->add_option("--mu", mu, "mu(A,X) (>= 2)")->required()->check(CLI::Range(2, 1 << 20));

  std::string config_path;
  std::string csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep from a config file");
  sweep_cmd->add_option("--config", config_path, "Sweep config JSON")->required();
  sweep_cmd->add_option("--csv", csv_path, "Also export the records as CSV");

  std::uint64_t n_max = 0;
  unsigned parallelism = 1;
  auto* kl_cmd = app.add_subcommand("klopsch-lev", "Exhaustive size/order check for bases of Z/nZ");
  kl_cmd->add_option("--n-max", n_max, "Largest modulus")->required()->check(CLI::Range(3, 30));
  kl_cmd->add_option("--parallelism", parallelism, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (order_cmd->parsed()) {
      const auto s = set_from_json(parse_json(read_source(set_path, in)));
      const OrderResult r = order(s, h_cap);
      if (json) {
        out << Json{{"order", r.order}, {"cofinite_witness_threshold", r.cofinite_witness_threshold}}.dump()
            << '\n';
      } else {
        out << "G(A) = " << r.order << "  (every x >= " << r.cofinite_witness_threshold << " lies in "
            << r.order << "A)\n";
      }
    } else if (inv_cmd->parsed()) {
      const auto inst = instance_from_json(parse_json(read_source(instance_path, in)));
      const auto inv = compute_invariants(inst.a, inst.x);
      if (json)
        out << invariants_to_json(inv).dump() << '\n';
      else
        print_invariants(out, inv);
    } else if (verify_cmd->parsed()) {
      const auto inst = instance_from_json(parse_json(read_source(instance_path, in)));
      const BoundReport r = evaluate_instance(inst, h_cap);
      if (json)
        out << report_to_json(r).dump() << '\n';
      else
        print_report(out, r);
      if (!r.all_satisfied()) {
        err << "bound violation: " << inst.label << '\n';
        return kExitBoundViolation;
      }
    } else if (construct_cmd->parsed()) {
      const RemovalInstance inst = sec2_cmd->parsed() ? section2_instance(d, k) : prop41_instance(h, mu);
      out << instance_to_json(inst).dump() << '\n';
    } else if (sweep_cmd->parsed()) {
      const SweepConfig cfg = SweepConfig::from_json(parse_json(read_source(config_path, in)));
      if (!csv_path.empty() && cfg.out.empty()) throw InvalidArgument("--csv needs 'out' in the sweep config");
      const SweepSummary s = run_sweep(cfg);
      if (!csv_path.empty()) export_csv(cfg.out, csv_path);
      if (json)
        out << s.to_json().dump() << '\n';
      else
        print_summary(out, s);
      if (s.violations > 0) return kExitBoundViolation;
    } else if (kl_cmd->parsed()) {
      const KlopschLevSummary s = klopsch_lev_exhaustive(n_max, parallelism);
      if (json) {
        out << s.to_json().dump() << '\n';
      } else {
        out << "n <= " << s.n_max << ": " << s.subsets_checked << " subsets, " << s.product_checked
            << " bases (" << s.bases_checked << " with 2 <= rho <= n-1), max |C|*rho/(2n) = "
            << s.max_product_ratio << ", violations " << s.violations << '\n';
      }
    }
  } catch (const BoundViolation& e) {
    err << "bound violation: " << e.what() << '\n';
    return kExitBoundViolation;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}

}  // namespace basisorder
