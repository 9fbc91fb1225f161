#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fsp/model.hpp"
#include "fsp/rng.hpp"

using namespace fsp;

TEST_CASE("constant-loading block structure") {
  ModelSetSpec<double> spec{ModelSet::Set1, 2, 3, 0.5};
  const auto model = build_simple_structure(spec);
  REQUIRE(model.p() == 6);
  REQUIRE(model.q() == 2);
  for (Index i = 0; i < 6; ++i) {
    for (Index f = 0; f < 2; ++f) {
      const double want = (i / 3 == f) ? 0.5 : 0.0;
      CHECK(model.loadings(i, f) == want);
    }
  }
  CHECK(max_abs_diff(model.phi.mat(), Matrixd::Identity(2, 2)) == 0.0);
  for (Index i = 0; i < 6; ++i) CHECK(model.psi2(i) == doctest::Approx(0.75));
}

TEST_CASE("variable loadings alternate starting high") {
  const auto b4 = block_loadings<double>(LoadingMode::Variable, 4, 0.5);
  CHECK(b4 == std::vector<double>{0.6, 0.4, 0.6, 0.4});
  // Odd block: one extra high loading; the block mean stays within .10/m.
  const auto b5 = block_loadings<double>(LoadingMode::Variable, 5, 0.5);
  CHECK(b5 == std::vector<double>{0.6, 0.4, 0.6, 0.4, 0.6});
  const double mean = std::accumulate(b5.begin(), b5.end(), 0.0) / 5.0;
  CHECK(std::abs(mean - 0.5) <= 0.1 / 5.0 + 1e-15);
}

TEST_CASE("oblique sets carry the .40 factor correlation") {
  ModelSetSpec<double> spec{ModelSet::Set3, 3, 3, 0.6};
  CHECK(spec.loading_mode() == LoadingMode::Constant);
  CHECK(spec.phi_offdiag() == 0.40);
  const auto model = build_simple_structure(spec);
  CHECK(model.phi(0, 1) == 0.40);
  CHECK(model.phi(1, 1) == 1.0);
  // One nonzero loading per row keeps the communality at l^2.
  for (Index i = 0; i < model.p(); ++i) {
    CHECK(model.psi2(i) == doctest::Approx(0.64).epsilon(1e-15));
  }
}

TEST_CASE("implied correlation matrix") {
  ModelSetSpec<double> spec{ModelSet::Set3, 2, 3, 0.6};
  const auto model = build_simple_structure(spec);
  const auto sigma = implied_sigma(model);
  for (Index i = 0; i < sigma.dim(); ++i) CHECK(sigma(i, i) == 1.0);
  CHECK(sigma(0, 1) == doctest::Approx(0.36).epsilon(1e-15));   // same block
  CHECK(sigma(0, 3) == doctest::Approx(0.144).epsilon(1e-15));  // across blocks
  CHECK(spd_check(sigma).is_pd);
}

TEST_CASE("inadmissible specs are rejected") {
  CHECK_THROWS_AS(build_simple_structure(ModelSetSpec<double>{ModelSet::Set2, 1, 3, 0.90}),
                  CommunalityAtLeastOne);
  CHECK_THROWS_AS(build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 0, 3, 0.5}),
                  Error);
  CHECK_THROWS_AS(build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 11, 3, 0.5}),
                  Error);
  CHECK_THROWS_AS(build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 2, 1, 0.5}),
                  Error);
  CHECK_THROWS_AS(build_simple_structure(ModelSetSpec<double>{ModelSet::Set1, 2, 3, 1.0}),
                  Error);
}

TEST_CASE("implied sigma validates the model") {
  PopulationModel<double> model;
  model.loadings = Matrixd::Constant(4, 2, 0.5);
  Matrixd phi(2, 2);
  phi << 1.0, 1.5, 1.5, 1.0;  // indefinite
  model.phi = SymMatrixd(phi);
  model.psi2 = Vectord::Constant(4, 0.5);
  CHECK_THROWS_AS(implied_sigma(model), NotPositiveDefinite);

  model.phi = SymMatrixd::identity(2);
  model.psi2(2) = 0.0;
  CHECK_THROWS_AS(implied_sigma(model), NotPositiveDefinite);
}

TEST_CASE("single-variable choice on toy patterns") {
  Matrixd equal(2, 1);
  equal << 0.6, 0.6;
  CHECK(select_single_variables(equal).chosen == std::vector<Index>{0});

  Matrixd two(2, 2);
  two << 0.8, 0.7, 0.5, 0.6;
  const auto sel = select_single_variables(two);
  CHECK(sel.chosen == std::vector<Index>{0, 1});
  CHECK(sel.selector(0, 0) == 1.0);
  CHECK(sel.selector(1, 1) == 1.0);
  CHECK(sel.selector.sum() == 2.0);

  Matrixd negative(2, 1);
  negative << -0.9, 0.8;
  CHECK(select_single_variables(negative).chosen == std::vector<Index>{0});
}

TEST_CASE("assignment resolves cross-factor competition globally") {
  // Greedy would hand variable 0 to both factors; the optimal assignment
  // gives factor 0 the second-best variable instead.
  Matrixd loadings(3, 2);
  loadings << 0.9, 0.8, 0.85, 0.0, 0.0, 0.1;
  const auto sel = select_single_variables(loadings);
  CHECK(sel.chosen == std::vector<Index>{1, 0});
}

TEST_CASE("assignment beats random valid assignments") {
  NormalStream normals(404);
  for (int rep = 0; rep < 20; ++rep) {
    Matrixd loadings(8, 3);
    for (Index i = 0; i < 8; ++i) {
      for (Index f = 0; f < 3; ++f) loadings(i, f) = 0.5 * normals.next();
    }
    const auto sel = select_single_variables(loadings);
    // Chosen variables are pairwise distinct.
    for (std::size_t a = 0; a < sel.chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < sel.chosen.size(); ++b) {
        CHECK(sel.chosen[a] != sel.chosen[b]);
      }
    }
    double best = 0.0;
    for (std::size_t f = 0; f < 3; ++f) {
      best += std::abs(loadings(sel.chosen[f], Index(f)));
    }
    std::vector<Index> perm(8);
    std::iota(perm.begin(), perm.end(), Index(0));
    CounterRng rng(std::uint64_t(rep) + 99);
    for (int trial = 0; trial < 50; ++trial) {
      for (std::size_t i = perm.size() - 1; i > 0; --i) {
        std::swap(perm[i], perm[std::size_t(rng.next_u64() % (i + 1))]);
      }
      double value = 0.0;
      for (Index f = 0; f < 3; ++f) {
        value += std::abs(loadings(perm[std::size_t(f)], f));
      }
      CHECK(value <= best + 1e-12);
    }
  }
}

TEST_CASE("selection rejects bad shapes") {
  CHECK_THROWS_AS(select_single_variables(Matrixd::Zero(2, 3)), DimensionMismatch);
  CHECK_THROWS_AS(select_single_variables(Matrixd::Zero(3, 0)), DimensionMismatch);
}
