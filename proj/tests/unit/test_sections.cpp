#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gensamp/numerics.hpp"
#include "gensamp/sections.hpp"

using namespace gensamp;

TEST_SUITE_BEGIN("sections");

TEST_CASE("rho bijection: 0, 1, -1, 2, -2, ...") {
  const long expected[] = {0, 1, -1, 2, -2, 3, -3};
  for (int i = 1; i <= 7; ++i) {
    CHECK(rho_int(i) == expected[i - 1]);
  }
  CHECK(rho(3, 0.5) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(rho_int(0), std::invalid_argument);
}

TEST_CASE("SamplingScheme: Nyquist admissibility is a hard boundary") {
  const BasisFamily haar = BasisFamily::haar();
  const BasisFamily leg = BasisFamily::legendre();
  CHECK_NOTHROW(SamplingScheme(1.0, haar));       // T = 1/2: eps <= 1
  CHECK_THROWS_AS(SamplingScheme(1.001, haar), std::domain_error);
  CHECK_NOTHROW(SamplingScheme(0.5, leg));        // T = 1: eps <= 1/2
  CHECK_THROWS_AS(SamplingScheme(0.6, leg), std::domain_error);
  CHECK_THROWS_AS(SamplingScheme(0.0, haar), std::invalid_argument);
  CHECK_THROWS_AS(SamplingScheme(-0.5, haar), std::invalid_argument);
  const BasisFamily fexp = BasisFamily::fourier_exp(0.5);
  CHECK_NOTHROW(SamplingScheme(0.5, fexp));       // boundary case exactly admissible
}

TEST_CASE("build_section: shape, offset, and validation") {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme(0.5, haar);
  const SectionMatrix whole = build_section(haar, scheme, 12, 5);
  CHECK(whole.block.rows() == 12);
  CHECK(whole.block.cols() == 5);
  const SectionMatrix tail = build_section(haar, scheme, 12, 2, 3);
  CHECK((tail.block - whole.block.rightCols(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(build_section(haar, scheme, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_section(haar, scheme, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_section(haar, scheme, 5, 5, -1), std::invalid_argument);
  // A scheme built for Haar (T = 1/2) is not admissible for Legendre (T = 1).
  const SamplingScheme haar_scheme(1.0, haar);
  CHECK_THROWS_AS(build_section(BasisFamily::legendre(), haar_scheme, 4, 4),
                  std::domain_error);
}

TEST_CASE("build_section: entries are (F phi_j)(rho(i))") {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme(0.5, haar);
  const SectionMatrix section = build_section(haar, scheme, 7, 3);
  for (int i = 1; i <= 7; ++i) {
    for (int l = 1; l <= 3; ++l) {
      CHECK(std::abs(section.block(i - 1, l - 1) - eval_fourier(haar, l, rho(i, 0.5))) == 0.0);
    }
  }
}

TEST_CASE("square FourierExp section is (1/sqrt(eps)) I exactly") {
  const double eps = 0.5;
  const BasisFamily fam = BasisFamily::fourier_exp(eps);
  const SamplingScheme scheme(eps, fam);
  const SectionMatrix square = build_square_section(fam, scheme, 9);
  const ComplexMatrix expected =
      ComplexMatrix::Identity(9, 9) / std::sqrt(eps);
  CHECK((square.block - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("section cache: rebuilds are bit-identical, cold or warm") {
  clear_section_cache();
  const BasisFamily leg = BasisFamily::legendre();
  const SamplingScheme scheme(0.5, leg);
  const SectionMatrix cold = build_section(leg, scheme, 20, 8);
  const SectionMatrix warm = build_section(leg, scheme, 20, 8);
  CHECK((cold.block - warm.block).cwiseAbs().maxCoeff() == 0.0);
  clear_section_cache();
  const SectionMatrix cold2 = build_section(leg, scheme, 20, 8);
  CHECK((cold.block - cold2.block).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Gram sections converge to the orthonormal limit eps^{-1} I") {
  const BasisFamily haar = BasisFamily::haar();
  const double eps = 0.5;
  const SamplingScheme scheme(eps, haar);
  const int n = 16;
  double previous = 1e300;
  const struct { int m; double expected; } cases[] = {
      {256, 0.04998}, {1024, 0.01255}, {4096, 0.00314}};
  for (const auto& c : cases) {
    const SectionMatrix section = build_section(haar, scheme, c.m, n);
    const ComplexMatrix gram = section.block.adjoint() * section.block;
    const double deviation =
        operator_norm(eps * gram - ComplexMatrix::Identity(n, n));
    CHECK(deviation == doctest::Approx(c.expected).epsilon(2e-3));
    CHECK(deviation < previous);
    previous = deviation;
  }
}

TEST_SUITE_END();
