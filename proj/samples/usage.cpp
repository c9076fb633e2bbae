// Library tour: build descriptors in code, decide them, probe with the oracle.

#include <iostream>

#include "icckit/icckit.hpp"

using namespace icckit;

int main() {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  // BS(2,3) is icc, BS(2,2) has the central element a^2.
  const Verdict bs23 = dispatch_decide(BaumslagSolitarDesc{2, 3});
  expect(bs23.outcome == Outcome::Icc, "BS(2,3) icc");
  const Verdict bs22 = dispatch_decide(BaumslagSolitarDesc{2, 2});
  expect(bs22.outcome == Outcome::NotIcc && bs22.witness->element == "a^2", "BS(2,2) witness a^2");

  // Z^2 x| Z with a hyperbolic matrix.
  SplitExtensionDesc anosov;
  anosov.kernel = free_abelian(2);
  anosov.quotient = free_abelian(1);
  anosov.lattice_action = {IntMatrix::from_rows({{2, 1}, {1, 1}})};
  const GroupDesc g = anosov;
  const Verdict v = dispatch_decide(g);
  std::cout << report_text(v);

  // Conjugates of a1 by radius, then the cross-check of the verdict.
  const BallReport ball = ball_report(g, "a1", 5);
  std::cout << ball_csv(ball);
  const CrossCheckRecord check = cross_check(g, v, 6);
  expect(check.consistent && !check.skipped, "oracle agrees with the Anosov verdict");

  // Round trip through JSON.
  const GroupDesc back = parse_spec_text(serialize(g).dump());
  expect(back == g, "JSON round trip");

  return failures == 0 ? 0 : 1;
}
