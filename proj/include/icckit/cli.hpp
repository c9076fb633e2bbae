#pragma once

// Command-line front end: decide, oracle and explain subcommands.
// Exit codes: 0 icc, 1 not_icc, 2 unknown, 3 error, 4 failed --check.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icckit/families.hpp"
#include "icckit/oracle.hpp"
#include "icckit/spec_io.hpp"

namespace icckit {

inline constexpr int kExitIcc = 0;
inline constexpr int kExitNotIcc = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitError = 3;
inline constexpr int kExitCheckFailed = 4;

inline int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Icc: return kExitIcc;
    case Outcome::NotIcc: return kExitNotIcc;
    case Outcome::Unknown: return kExitUnknown;
  }
  return kExitError;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"icckit: decide the icc property for catalog groups"};
  app.require_subcommand(1);

  std::string file;
  bool as_json = false, check = false, as_csv = false;
  std::size_t radius = 8;
  std::string element;

  CLI::App* decide = app.add_subcommand("decide", "run the decider for a descriptor");
  decide->add_option("file", file, "JSON descriptor")->required();
  decide->add_flag("--json", as_json, "machine-readable report");
  decide->add_flag("--check", check, "cross-check the verdict with the conjugacy oracle");
  decide->add_option("--radius", radius, "oracle radius for --check")->check(CLI::Range(0, 64));

  CLI::App* oracle = app.add_subcommand("oracle", "enumerate the conjugates of an element by radius");
  oracle->add_option("file", file, "JSON descriptor")->required();
  oracle->add_option("--element", element, "word in the family alphabet (empty for the identity)")->required();
  oracle->add_option("--radius", radius, "ball radius")->required()->check(CLI::Range(0, 64));
  auto* csv = oracle->add_flag("--csv", as_csv, "CSV output");
  auto* js = oracle->add_flag("--json", as_json, "JSON output");
  csv->excludes(js);

  CLI::App* explain = app.add_subcommand("explain", "describe which conditions fired");
  explain->add_option("file", file, "JSON descriptor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    const GroupDesc desc = parse_spec(file);
    const Options opts = Options::from_environment();
    if (oracle->parsed()) {
      const BallReport b = ball_report(desc, element, radius);
      if (as_csv) out << ball_csv(b);
      else if (as_json) out << ball_json(b).dump(2) << "\n";
      else {
        out << "element " << b.element << ", radius " << b.radius << "\n";
        for (std::size_t r = 0; r < b.counts.size(); ++r) out << "  r=" << r << "  " << b.counts[r] << "\n";
        out << (b.closed ? "closed" : "not closed") << (b.truncated ? " (truncated)" : "") << "\n";
      }
      return 0;
    }
    Verdict v = dispatch_decide(desc, opts);
    if (explain->parsed()) {
      out << explain_text(desc, v);
      return exit_code(v.outcome);
    }
    if (check) v.oracle = cross_check(desc, v, radius);
    if (as_json) out << report_json(v).dump(2) << "\n";
    else out << report_text(v);
    if (check && !v.oracle->consistent) {
      err << "check failed: " << v.oracle->message << "\n";
      return kExitCheckFailed;
    }
    return exit_code(v.outcome);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace icckit
