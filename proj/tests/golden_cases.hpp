#pragma once

#include <string>
#include <vector>

struct GoldenCase {
  int criterion;
  std::string file;
  std::vector<std::string> args;
};

inline const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases = {
      {2, "trefoil_analyze_p2_r1.json", {"analyze", "--knot", "trefoil", "--p", "2", "--r", "1"}},
      {2, "trefoil_analyze_p2_r2.json", {"analyze", "--knot", "trefoil", "--p", "2", "--r", "2"}},
      {2, "trefoil_analyze_p3_r1.json", {"analyze", "--knot", "trefoil", "--p", "3", "--r", "1"}},
      {2, "trefoil_periods_p2_r3.json", {"periods", "--knot", "trefoil", "--p", "2", "--rmax", "3"}},
      {2, "trefoil_periods_p3_r4.json", {"periods", "--knot", "trefoil", "--p", "3", "--rmax", "4"}},
      {3, "figure8_periods_p5_r3.json", {"periods", "--knot", "figure8", "--p", "5", "--rmax", "3"}},
      {3, "figure8_analyze_p2_r1.json", {"analyze", "--knot", "figure8", "--p", "2", "--r", "1"}},
      {9, "trefoil_coverings_z2_d3.json", {"coverings", "--knot", "trefoil", "--sigma", "2", "--d", "3"}},
      {9, "trefoil_coverings_z2_d1.json", {"coverings", "--knot", "trefoil", "--sigma", "2", "--d", "1"}},
      {9, "trefoil_coverings_z6_d6.json", {"coverings", "--knot", "trefoil", "--sigma", "6", "--d", "6"}},
  };
  return cases;
}
