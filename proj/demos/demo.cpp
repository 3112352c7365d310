// Walk-through: the four cones of a few small sets, and the four-cones test on a circle.

#include <iostream>

#include "conelab/conelab.hpp"

int main() {
  using namespace conelab;

  const auto signs = std::make_shared<const DirectionGrid>(DirectionGrid::signs_1d());
  for (const char* name : {"factorial-sequence", "harmonic-sequence", "half-line"}) {
    const SampledSet f = build_example(name);
    const auto cones = estimate_all_cones(f, Vec::Zero(1), make_ladder(f, ConeParams{}), signs);
    std::cout << name << ":";
    for (const auto& c : cones) {
      std::cout << "  " << to_string(c.kind) << " {";
      for (int j : c.member_indices()) std::cout << (c.grid->direction(j)(0) > 0 ? " +1" : " -1");
      std::cout << " }";
    }
    std::cout << '\n';
  }

  const SampledSet circle = build_example("circle");
  const ClassificationReport ok = four_cones_classify(circle, circle.metadata().test_points);
  std::cout << "circle, four-cones test at " << ok.points.size() << " points: " << to_string(ok.verdict) << '\n';

  const SampledSet cusp = build_example("cusp-y3x2");
  const ClassificationReport bad = four_cones_classify(cusp, Mat::Zero(2, 1));
  std::cout << "cusp y^3 = x^2 at the origin: " << to_string(bad.verdict)
            << " (defect " << bad.points[0].defects.at("pTan+|pTan-") << ", tolerance " << bad.defect_tol << ")\n";

  const Subspace a = Subspace::span((Mat(3, 2) << 1, 0, 0, 1, 0, 0).finished());
  const Subspace b = Subspace::span((Mat(3, 2) << 1, 0, 0, 1, 0, 1).finished());
  std::cout << "angle between the xy-plane and span{e1, e2 + e3}: " << subspace_angle(a, b) << '\n';
  return 0;
}
