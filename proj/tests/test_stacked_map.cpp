#include <vector>

#include "doctest.h"
#include "sysid/moments.hpp"
#include "sysid/simulate.hpp"
#include "sysid/stacked_map.hpp"
#include "test_support.hpp"

using namespace sysid;

namespace {

Matrix mat_power(const Matrix& a, int e) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < e; ++i) out = out * a;
  return out;
}

// Independent reconstruction of the structured map from the block layout.
Matrix oracle_pi(const Matrix& a, const IndexFamily& fam) {
  const int n = static_cast<int>(a.rows());
  auto tags = fam.tags();
  auto blocks = eta_blocks(fam);
  Matrix pi = Matrix::Zero(static_cast<long>(tags.size()) * n,
                           static_cast<long>(blocks.size()) * n);
  for (std::size_t ti = 0; ti < tags.size(); ++ti) {
    auto [m, q] = tags[ti];
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      if (b.m != m || b.q != q) continue;
      Matrix coef;
      switch (b.kind) {
        case EtaBlock::Initial:
          coef = mat_power(a, m - 1) - mat_power(a, q - 1);
          break;
        case EtaBlock::ObsDiff:
          coef = Matrix::Identity(n, n);
          break;
        case EtaBlock::ProcDiff:
          // Block holds f(m-1-s) - f(q-1-s); both enter with weight A^s.
          coef = mat_power(a, m - 1 - b.first);
          break;
        case EtaBlock::ProcOffset:
          coef = -mat_power(a, q - 1 - b.first);
          break;
      }
      pi.block(ti * n, bi * n, n, n) = coef;
    }
  }
  return pi;
}

}  // namespace

TEST_SUITE_BEGIN("stacked_map");

TEST_CASE("structured map matches the blockwise reconstruction") {
  Rng rng(1301);
  for (int inst = 0; inst < 6; ++inst) {
    int n = 1 + inst % 3;
    Matrix a = testsup::random_matrix(rng, n, n);
    a *= (0.5 + 0.3 * (inst % 3)) / spectral_norm(a);
    IndexFamily fam =
        IndexFamily::from_tags(1, 6, {{1, 3}, {2, 5}, {3, 4}, {4, 6}});
    Matrix want = oracle_pi(a, fam);
    Matrix got = build_pi(a, fam);
    REQUIRE(got.rows() == want.rows());
    REQUIRE(got.cols() == want.cols());
    CHECK((got - want).norm() <= 1e-12 * (1.0 + want.norm()));
  }
}

TEST_CASE("map applied to eta reproduces the stacked differences") {
  Rng rng(1302);
  for (int inst = 0; inst < 8; ++inst) {
    int n = 1 + inst % 4;
    LinearSystem sys = testsup::random_system(rng, n, 1.05, true);
    Trajectory traj = simulate(sys, testsup::uniform_noise(1.0, 0.8, 0.5), 11,
                               1400 + inst, true);
    IndexFamily fam = IndexFamily::from_tags(
        2, 9, {{2, 4}, {3, 9}, {5, 6}, {6, 8}, {8, 9}});

    Vector diff = stacked_differences(traj, fam);
    Vector via_map = build_pi(sys.A, fam) * build_eta(traj, fam);
    CHECK((diff - via_map).norm() <= 1e-10 * (1.0 + diff.norm()));
  }
}

TEST_CASE("stacked differences follow tag order") {
  Rng rng(1303);
  LinearSystem sys = testsup::random_system(rng, 2, 0.9);
  Trajectory traj = simulate(sys, testsup::uniform_noise(1.0, 0.6, 0.4), 8, 83);
  IndexFamily fam = IndexFamily::from_tags(1, 6, {{1, 4}, {2, 3}, {2, 6}});

  Vector diff = stacked_differences(traj, fam);
  REQUIRE(diff.size() == 6);
  CHECK((diff.segment(0, 2) - (traj.r(1) - traj.r(4))).norm() == 0.0);
  CHECK((diff.segment(2, 2) - (traj.r(2) - traj.r(3))).norm() == 0.0);
  CHECK((diff.segment(4, 2) - (traj.r(2) - traj.r(6))).norm() == 0.0);
}

TEST_CASE("whitened map norm equals the dense spectral norm") {
  Rng rng(1304);
  for (int inst = 0; inst < 5; ++inst) {
    int n = 1 + inst % 3;
    Matrix a = testsup::random_matrix(rng, n, n);
    a *= 0.9 / spectral_norm(a);
    NoiseVariances var;
    var.initial = 0.4;
    var.process = 0.5;
    var.observation = 0.2;
    IndexFamily fam = IndexFamily::from_tags(1, 5, {{1, 2}, {2, 4}, {3, 5}});

    MomentSet set = gamma_and_whitener(a, var, fam);
    Matrix pi = build_pi(a, fam);

    // Block-diagonal whitening: one copy of the whitener per tag row block.
    long tags = static_cast<long>(fam.tag_count());
    Matrix white = Matrix::Zero(tags * n, tags * n);
    for (long t = 0; t < tags; ++t)
      white.block(t * n, t * n, n, n) = set.whitener;

    double want = spectral_norm(white * pi);
    CHECK(pi_upsilon_norm(a, set.whitener, fam) ==
          doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("whitened map norm is the worst tag alone") {
  Rng rng(1305);
  Matrix a = testsup::random_matrix(rng, 2, 2);
  a *= 0.8 / spectral_norm(a);
  NoiseVariances var;
  var.initial = 0.3;
  var.process = 0.4;
  var.observation = 0.15;

  IndexFamily fam = IndexFamily::from_tags(1, 6, {{1, 4}, {2, 6}, {3, 5}});
  MomentSet set = gamma_and_whitener(a, var, fam);
  double whole = pi_upsilon_norm(a, set.whitener, fam);

  double best = 0.0;
  for (auto [m, q] : fam.tags()) {
    IndexFamily single = IndexFamily::from_tags(fam.k, fam.p, {{m, q}});
    best = std::max(best, pi_upsilon_norm(a, set.whitener, single));
  }
  CHECK(whole == doctest::Approx(best).epsilon(1e-12));
}

TEST_SUITE_END();
