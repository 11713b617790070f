#include "subproj/harness/brute_force.hpp"
#include "subproj/harness/random.hpp"
#include "subproj/harness/suites.hpp"
#include "subproj/subprojectivity.hpp"

#include <gtest/gtest.h>

using namespace subproj;
using namespace subproj::harness;

namespace {

const Ring Z2 = Ring::integers_mod(2);
const Ring Z4 = Ring::integers_mod(4);

TrialConfig tiny(Ring r, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.ring = r;
  cfg.window = 3;
  cfg.max_generators = 2;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST(BruteForce, EnumerationExamples) {
  auto s = sphere(PresentedModule::free(Z2, 1), 0);
  EXPECT_EQ(oracle::enumerate_chain_maps(s, s).size(), 2u);
  auto maps = oracle::enumerate_chain_maps(s, zero_complex(Z2));
  ASSERT_EQ(maps.size(), 1u);
  EXPECT_TRUE(chain_maps_equal(maps[0], zero_chain_map(s, zero_complex(Z2))));
  auto d = disc(PresentedModule::free(Z2, 1), 0);
  EXPECT_TRUE(oracle::brute_force_null_homotopic(identity_chain_map(d)));
  EXPECT_FALSE(oracle::brute_force_null_homotopic(identity_chain_map(s)));
}

TEST(BruteForce, SearchLimit) {
  auto big = sphere(PresentedModule::free(Z4, 3), 0);
  EXPECT_THROW(oracle::enumerate_chain_maps(big, big, 1000), oracle::SearchSpaceTooLarge);
}

TEST(BruteForce, LiftableFamiliesMatchDirectEnumeration) {
  // Hom(M, P) enumerated outright, composed with the cover, against the
  // disc-adjunction parametrization used by the oracle.
  for (std::size_t t = 0; t < 40; ++t) {
    auto rng = trial_rng(11, t);
    auto cfg = tiny(Z2, 11);
    cfg.window = 2;
    cfg.max_generators = 1;
    auto m = random_complex(cfg, rng), n = random_complex(cfg, rng);
    auto epi = canonical_projective_epi(n);
    oracle::ComplexView mv(m), nv(n);
    auto direct = oracle::enumerate_chain_maps(m, epi.P);
    std::set<oracle::FamilyKey> via_direct;
    for (const auto& h : direct) via_direct.insert(oracle::chain_map_key(nv, compose(epi.pi, h)));
    EXPECT_EQ(via_direct, oracle::liftable_keys(mv, nv)) << t;
  }
}

TEST(BruteForce, CountsMatchChainMapsGroup) {
  for (std::size_t t = 0; t < 60; ++t) {
    auto cfg = tiny(Z2, 5);
    auto rng = trial_rng(cfg.seed, t);
    auto x = random_complex(cfg, rng), y = random_complex(cfg, rng);
    auto bf = oracle::brute_force_pair(x, y);
    EXPECT_EQ(Integer(bf.chain_maps), module_order(chain_maps_group(x, y, 0).group)) << t;
    EXPECT_EQ(bf.hom_k_zero, hom_K(x, y, 0).is_zero()) << t;
  }
}

TEST(Random, ComplexesAreValidAndDeterministic) {
  auto cfg = tiny(Z4, 3);
  cfg.window = 5;
  cfg.max_generators = 3;
  for (std::size_t t = 0; t < 1000; ++t) {
    auto a = trial_rng(cfg.seed, t), b = trial_rng(cfg.seed, t);
    auto x = random_complex(cfg, a);
    EXPECT_EQ(x, random_complex(cfg, b));
    EXPECT_LE(x.hi() - x.lo() + 1, 5);
  }
  cfg.max_generators = 0;
  auto rng = trial_rng(1, 0);
  EXPECT_TRUE(random_complex(cfg, rng).is_zero());
}

TEST(Random, ExactComplexesAreExact) {
  for (Ring r : {Ring::integers(), Z4}) {
    auto cfg = tiny(r, 9);
    cfg.window = 4;
    for (std::size_t t = 0; t < 100; ++t) {
      auto rng = trial_rng(cfg.seed, t);
      EXPECT_TRUE(is_exact(random_exact_complex(cfg, rng))) << r.to_string() << " " << t;
    }
  }
}

TEST(Random, NullHomotopicMapsCarryWitness) {
  auto cfg = tiny(Ring::integers(), 4);
  for (std::size_t t = 0; t < 50; ++t) {
    auto rng = trial_rng(cfg.seed, t);
    auto x = random_complex(cfg, rng), y = random_complex(cfg, rng);
    auto [f, s] = random_null_homotopic(x, y, cfg, rng);
    EXPECT_TRUE(verify_homotopy(f, s));
    EXPECT_TRUE(is_null_homotopic(f).has_value());
  }
}

TEST(Suites, DeterministicAcrossRunsAndThreads) {
  TrialConfig cfg;
  cfg.ring = Z4;
  cfg.trials = 40;
  cfg.seed = 99;
  for (const auto* id : {"thm-4-1", "prop-shift", "oracle"}) {
    auto a = run_suite(id, cfg, 1), b = run_suite(id, cfg, 3);
    EXPECT_EQ(a.to_json(false), b.to_json(false)) << id;
  }
  auto other = cfg;
  other.seed = 100;
  EXPECT_NE(run_suite("prop-spherR", cfg).tallies, run_suite("prop-spherR", other).tallies);
}

TEST(Suites, UnknownSuiteAndRingChecks) {
  TrialConfig cfg;
  EXPECT_THROW(run_suite("no-such-suite", cfg), UnknownSuite);
  cfg.window = 9;
  EXPECT_THROW(run_suite("prop-1", cfg), Error);
  cfg.window = 3;
  cfg.trials = 3;
  EXPECT_FALSE(run_suite("oracle", cfg).passed());  // Z is not finite
}

struct SuiteCase {
  std::string suite;
  std::string ring;
};

class RandomSuites : public ::testing::TestWithParam<SuiteCase> {};

TEST_P(RandomSuites, NoCounterexamples) {
  TrialConfig cfg;
  cfg.ring = Ring::parse(GetParam().ring);
  cfg.trials = 100;
  cfg.seed = 2718;
  cfg.window = GetParam().suite == "oracle" ? 3 : 4;
  cfg.max_generators = GetParam().suite == "oracle" ? 2 : 3;
  auto rep = run_suite(GetParam().suite, cfg);
  EXPECT_EQ(rep.agreements + rep.counterexamples.size(), rep.trials);
  EXPECT_TRUE(rep.passed()) << rep.to_json().dump(1).substr(0, 4000);
}

std::vector<SuiteCase> random_cases() {
  std::vector<SuiteCase> out;
  for (const auto* s : {"thm-4-1", "thm-4-2", "prop-pull", "prop-spherR", "cor-exac", "prop-1", "lem-discs", "prop-sph",
                        "prop-shift", "lem-sph", "prop-compon", "pro-cont2", "lem-nul1"})
    for (const auto* r : {"Z", "Zmod:4", "Zmod:6"}) out.push_back({s, r});
  out.push_back({"oracle", "Zmod:2"});
  out.push_back({"oracle", "Zmod:3"});
  out.push_back({"prop-semisimple", "Zmod:3"});
  out.push_back({"prop-semisimple", "Zmod:5"});
  out.push_back({"prop-semisimple", "Zmod:6"});
  out.push_back({"prop-hered", "Z"});
  return out;
}

INSTANTIATE_TEST_SUITE_P(All, RandomSuites, ::testing::ValuesIn(random_cases()), [](const auto& info) {
  std::string name = info.param.suite + "_" + info.param.ring;
  for (auto& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return name;
});

TEST(FixedSuites, HoldOverSeveralRings) {
  TrialConfig cfg;
  for (const auto* ring : {"Z", "Zmod:4", "Zmod:12"}) {
    cfg.ring = Ring::parse(ring);
    for (const auto* id : {"exmp-1-spherR", "exmp-2-spherR", "ex-2main1"}) {
      auto rep = run_suite(id, cfg);
      EXPECT_TRUE(rep.passed()) << id << " " << ring << " " << rep.to_json().dump(1).substr(0, 2000);
      EXPECT_GT(rep.trials, 0u);
    }
  }
  // no non-projective cyclic module over a semisimple ring
  json instance;
  EXPECT_THROW(suites::ex_2main1(Ring::integers_mod(3), instance), Error);
}
