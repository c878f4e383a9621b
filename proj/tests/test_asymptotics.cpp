#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace spectra;

namespace {

Rational q(long p, long d) { return Rational(Integer(p), Integer(d)); }

std::vector<Integer> ks(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

const char* kCounter = "2*k,1;2,2*k^3+1";

}  // namespace

TEST(Polynomial, Arithmetic) {
  const Polynomial k = Polynomial::variable();
  const Polynomial p = (k + Polynomial(Integer(1))).pow(3);
  EXPECT_EQ(p.coeffs(), (std::vector<Integer>{1, 3, 3, 1}));
  EXPECT_EQ(p(Integer(2)), 27);
  EXPECT_EQ((k - k).coeffs().size(), 0u);
  EXPECT_EQ(Polynomial(Integer(5)).pow(0)(Integer(9)), 1);
}

TEST(ParseFamily, Counterexample) {
  const FamilySpec fam = parse_family(kCounter);
  ASSERT_EQ(fam.pairs.size(), 2u);
  const auto raw = fam.evaluate(Integer(3));
  EXPECT_EQ(raw[0].n, 6);
  EXPECT_EQ(raw[0].l, 1);
  EXPECT_EQ(raw[1].n, 2);
  EXPECT_EQ(raw[1].l, 55);
  EXPECT_EQ(fam.instantiate(Integer(1)), validate_pairs({{2, 1}, {2, 3}}));
}

TEST(ParseFamily, GrammarCoverage) {
  EXPECT_EQ(parse_family("k,1").instantiate(Integer(7)), validate_pairs({{7, 1}}));
  EXPECT_EQ(parse_family(" ( k + 1 ) * 2 - 1 , -(-3) ").evaluate(Integer(4))[0].n, 9);
  EXPECT_EQ(parse_family("k^2*k^0,1").evaluate(Integer(3))[0].n, 9);
  EXPECT_EQ(parse_family("2*k,k").instantiate(Integer(1)), validate_pairs({{2, 1}}));
  const Integer big("1000000000000", 10);
  EXPECT_EQ(parse_family("k^3,1").evaluate(big)[0].n, big * big * big);
}

TEST(ParseFamily, Errors) {
  auto pos = [](const char* text) -> long {
    try {
      parse_family(text);
    } catch (const FamilyParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  EXPECT_EQ(pos("k/2,1"), 1);
  EXPECT_EQ(pos("x,1"), 0);
  EXPECT_EQ(pos("kk,1"), 0);
  EXPECT_EQ(pos("k^k,1"), 2);
  EXPECT_EQ(pos("k^-1,1"), 2);
  EXPECT_EQ(pos("k,1;"), 4);
  EXPECT_EQ(pos("k"), 1);
  EXPECT_EQ(pos("(k,1"), 2);
  EXPECT_EQ(pos("k,1 2"), 4);
  EXPECT_EQ(pos(""), 0);
  EXPECT_EQ(pos("1.5,1"), 1);
}

TEST(FamilySpec, InstanceErrorNamesK) {
  const FamilySpec fam = parse_family("2*k,k");
  try {
    fam.instantiate(Integer(2));
    FAIL();
  } catch (const FamilyInstanceError& e) {
    EXPECT_EQ(e.k(), 2);
    EXPECT_EQ(e.code(), CurveErrc::NonCoprime);
    EXPECT_NE(std::string(e.what()).find("k=2"), std::string::npos);
  }
  EXPECT_THROW(scan_family(fam, ks({1, 2, 3}), default_scan_grid(), LimitTarget::Zero), FamilyInstanceError);
}

TEST(PhiLimit, Examples) {
  EXPECT_EQ(phi_limit_counterexample(q(1, 2)), q(1, 8));
  EXPECT_EQ(phi_limit_counterexample(Rational(0)), Rational(0));
  EXPECT_EQ(phi_limit_counterexample(q(1, 4)), q(1, 32));
  EXPECT_THROW(phi_limit_counterexample(Rational(1)), std::domain_error);
  EXPECT_THROW(phi_limit_counterexample(q(-1, 4)), std::domain_error);
}

TEST(DefaultGrid, Shape) {
  const auto g = default_scan_grid();
  ASSERT_EQ(g.size(), 255u);
  EXPECT_EQ(g.front(), q(1, 256));
  EXPECT_EQ(g.back(), q(255, 256));
}

TEST(ScanFamily, CounterexampleRows) {
  const auto rows = scan_family(parse_family(kCounter), ks({1}), default_scan_grid(), LimitTarget::Counterexample);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mu, 18);
  EXPECT_EQ(rows[0].beta_g, 9);
  EXPECT_EQ(rows[0].ratio, q(1, 2));
  EXPECT_EQ(rows[0].lct, q(5, 12));
}

TEST(ScanFamily, CounterexampleClosedForms) {
  const FamilySpec fam = parse_family(kCounter);
  for (long k = 1; k <= 40; ++k) {
    const CurveInvariants inv = derive_invariants(fam.instantiate(Integer(k)));
    EXPECT_EQ(inv.mu, 2 * k * k * k + 16 * k * k);
    EXPECT_EQ(inv.beta_g(), 2 * k * k * k + 4 * k + 3);
    EXPECT_EQ(inv.beta_g_over_mu, Rational(Integer(2 * k * k * k + 4 * k + 3), Integer(2 * k * k * k + 16 * k * k)));
    EXPECT_LT(inv.beta_g_over_mu, Rational(1));
    EXPECT_EQ(inv.lct, q(1, 2) * (q(1, 2 * k) + q(1, 2 * k + 1)));
  }
}

TEST(ScanFamily, PairsNOneRatio) {
  const auto rows = scan_family(parse_family("k,1"), ks({100}), default_scan_grid(), LimitTarget::Zero);
  EXPECT_EQ(rows[0].ratio, q(101, 9900));
}

TEST(ScanFamily, SupDevIsMaxOverGrid) {
  const CurveInvariants inv = derive_invariants(validate_pairs({{3, 4}, {2, 3}}));
  const std::vector<Rational> grid{q(1, 4), q(1, 2), q(9, 10)};
  Rational expect;
  for (const auto& r : grid) expect = std::max(expect, abs(phi_from_def(inv, r)));
  const auto rows = scan_family(parse_family("3,4;2,3"), ks({0}), grid, LimitTarget::Zero);
  EXPECT_EQ(rows[0].sup_dev, expect);
  EXPECT_THROW(scan_family(parse_family("k,1"), ks({3}), {Rational(1)}, LimitTarget::Zero), std::out_of_range);
}

TEST(Verdict, Examples) {
  const auto conv = convergence_verdict(scan_family(parse_family("k,1"), ks({10, 100, 1000}), default_scan_grid(), LimitTarget::Zero));
  EXPECT_TRUE(conv.ratio_decreasing);
  EXPECT_TRUE(conv.lct_decreasing);
  EXPECT_TRUE(conv.sup_dev_decreasing);
  EXPECT_EQ(conv.trend, Trend::Converges);

  const auto counter = convergence_verdict(scan_family(parse_family(kCounter), ks({10, 20, 40}), default_scan_grid(), LimitTarget::Zero));
  EXPECT_FALSE(counter.ratio_decreasing);
  EXPECT_TRUE(counter.lct_decreasing);
  EXPECT_FALSE(counter.sup_dev_decreasing);
  EXPECT_EQ(counter.trend, Trend::LctToZeroButNonConvergent);

  const auto flat = convergence_verdict(scan_family(parse_family("3,4;2,3"), ks({1, 2, 3}), default_scan_grid(), LimitTarget::Zero));
  EXPECT_FALSE(flat.ratio_decreasing);
  EXPECT_FALSE(flat.lct_decreasing);
  EXPECT_FALSE(flat.sup_dev_decreasing);
  EXPECT_EQ(flat.trend, Trend::NonConvergent);
}

TEST(Verdict, ToleratesSingleUpwardSteps) {
  // sup_dev for (n, 1) is not monotone step by step (it rises at n = 38).
  std::vector<Integer> range;
  for (long n = 30; n <= 60; ++n) range.emplace_back(n);
  const auto rows = scan_family(parse_family("k,1"), range, default_scan_grid(), LimitTarget::Zero);
  bool some_rise = false;
  for (std::size_t i = 1; i < rows.size(); ++i) some_rise = some_rise || rows[i - 1].sup_dev < rows[i].sup_dev;
  EXPECT_TRUE(some_rise);
  EXPECT_EQ(convergence_verdict(rows).trend, Trend::Converges);
}

TEST(Verdict, RejectsShortOrUnorderedInput) {
  const auto rows = scan_family(parse_family("k,1"), ks({5, 6, 7}), default_scan_grid(), LimitTarget::Zero);
  EXPECT_THROW(convergence_verdict({rows[0], rows[1]}), std::invalid_argument);
  EXPECT_THROW(convergence_verdict({rows[0], rows[2], rows[1]}), std::invalid_argument);
}

TEST(Asymptotics, CounterexampleApproachesLimit) {
  const FamilySpec fam = parse_family(kCounter);
  const auto rows = scan_family(fam, ks({10, 20, 40}), default_scan_grid(), LimitTarget::Counterexample);
  EXPECT_LT(rows[1].sup_dev, rows[0].sup_dev);
  EXPECT_LT(rows[2].sup_dev, rows[1].sup_dev);
  EXPECT_LE(rows[2].sup_dev, q(1, 10));
  EXPECT_EQ(convergence_verdict(rows).sup_dev_decreasing, true);
}
