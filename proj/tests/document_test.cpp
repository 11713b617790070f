#include "subproj/subproj.hpp"
#include "subproj/harness/random.hpp"

#include <gtest/gtest.h>

using namespace subproj;
using io::json;

namespace {

const char* kMult2 = R"({
  "schema": 1,
  "ring": "Z",
  "modules": {"R": {"generators": 1, "relations": [[]]}},
  "complexes": {
    "N": {"components": [{"degree": 1, "module": "R"}, {"degree": 0, "module": "R"}],
          "differentials": [{"degree": 1, "matrix": [["2"]]}]},
    "S": {"sphere": {"module": "R", "degree": 0}},
    "D": {"disc": {"module": {"generators": 1}, "degree": 3}},
    "T": {"shift": {"complex": "N", "by": -2}},
    "U": {"direct_sum": ["S", "N"]}
  },
  "chain_maps": {"g": {"source": "S", "target": "N", "components": [{"degree": 0, "matrix": [["1"]]}]}}
})";

}  // namespace

TEST(Document, LoadsAndComputesHomology) {
  auto doc = io::parse_document(kMult2);
  const auto& n = doc.complex("N");
  auto inv = homology(n, 0).invariants();
  EXPECT_EQ(inv.free_rank, 0u);
  ASSERT_EQ(inv.factors.size(), 1u);
  EXPECT_EQ(inv.factors[0], 2);
  EXPECT_TRUE(homology(n, 1).is_zero());
  EXPECT_EQ(doc.complex("S"), sphere(PresentedModule::free(Ring::integers(), 1), 0));
  EXPECT_EQ(doc.complex("D").lo(), 3);
  EXPECT_EQ(doc.complex("T"), shift(n, -2));
  EXPECT_EQ(doc.complex("U").component(0).generators(), 2u);
  EXPECT_TRUE(chain_maps_equal(doc.chain_map("g"), make_chain_map(doc.complex("S"), n, {{0, Matrix{{1}}}})));
}

TEST(Document, EmptyDocuments) {
  EXPECT_TRUE(io::parse_document("").complexes.empty());
  EXPECT_TRUE(io::parse_document("  \n").complexes.empty());
  auto doc = io::parse_document("{}");
  EXPECT_TRUE(doc.complexes.empty() && doc.modules.empty() && doc.chain_maps.empty());
  EXPECT_EQ(doc.ring, Ring::integers());
}

TEST(Document, ValidationErrorNamesObjectAndDegree) {
  const char* text = R"({"ring": "Z", "complexes": {"bad": {
      "components": [{"degree": 1, "module": {"generators": 1}}, {"degree": 0, "module": {"generators": 1}},
                     {"degree": -1, "module": {"generators": 1}}],
      "differentials": [{"degree": 1, "matrix": [["1"]]}, {"degree": 0, "matrix": [["1"]]}]}}})";
  try {
    io::parse_document(text);
    FAIL();
  } catch (const io::DocumentError& e) {
    EXPECT_EQ(e.kind(), io::DocumentError::Kind::Validation);
    EXPECT_EQ(e.object(), "bad");
    ASSERT_TRUE(e.degree());
    EXPECT_EQ(*e.degree(), 1);
  }
}

TEST(Document, SyntaxErrorHasPosition) {
  try {
    io::parse_document("{\n  \"ring\": \"Z\",\n  \"complexes\": [1, }\n}");
    FAIL();
  } catch (const io::DocumentError& e) {
    EXPECT_EQ(e.kind(), io::DocumentError::Kind::Syntax);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(Document, RejectsMalformedInputs) {
  EXPECT_THROW(io::parse_document(R"({"schema": 2})"), io::DocumentError);
  EXPECT_THROW(io::parse_document(R"({"ring": "Q"})"), io::DocumentError);
  EXPECT_THROW(io::parse_document(R"({"complexes": {"x": "y", "y": "x"}})"), io::DocumentError);
  EXPECT_THROW(io::parse_document(R"({"complexes": {"x": {"components": [{"degree": 0, "module": "nope"}]}}})"),
               io::DocumentError);
  EXPECT_THROW(io::parse_document(R"({"modules": {"m": {"generators": 1, "relations": [["x"]]}}})"),
               io::DocumentError);
  EXPECT_THROW(io::parse_document(R"({"modules": {"m": {"generators": 2, "relations": [["1"]]}}})"),
               io::DocumentError);
  // a chain map whose square fails names its degree
  try {
    io::parse_document(R"({"complexes": {"s": {"sphere": {"module": {"generators": 1}, "degree": 0}},
      "d": {"disc": {"module": {"generators": 1}, "degree": 0}}},
      "chain_maps": {"f": {"source": "d", "target": "s", "components": [{"degree": 0, "matrix": [["1"]]}]}}})");
    FAIL();
  } catch (const io::DocumentError& e) {
    EXPECT_EQ(e.object(), "f");
    EXPECT_TRUE(e.degree().has_value());
  }
}

TEST(Document, RoundTripIsIdentity) {
  auto doc = io::parse_document(kMult2);
  auto again = io::parse_document(io::serialize(doc));
  EXPECT_TRUE(io::same_objects(doc, again));
  EXPECT_EQ(io::serialize(doc), io::serialize(again));
}

TEST(Document, RoundTripOfRandomComplexes) {
  for (Ring r : {Ring::integers(), Ring::integers_mod(4), Ring::integers_mod(6)}) {
    harness::TrialConfig cfg;
    cfg.ring = r;
    cfg.window = 5;
    cfg.max_generators = 3;
    for (std::size_t t = 0; t < 50; ++t) {
      auto rng = harness::trial_rng(17, t);
      io::Document doc;
      doc.ring = r;
      auto x = harness::random_complex(cfg, rng), y = harness::random_complex(cfg, rng);
      doc.complexes.emplace("x", x);
      doc.complexes.emplace("y", y);
      doc.chain_maps.emplace("f", harness::random_chain_map(x, y, cfg, rng));
      doc.modules.emplace("m", harness::random_module(cfg, rng));
      auto back = io::parse_document(io::serialize(doc));
      EXPECT_TRUE(io::same_objects(doc, back)) << r.to_string() << " " << t;
    }
  }
}

TEST(Document, LargeIntegersSurvive) {
  io::Document doc;
  Integer big("123456789012345678901234567890");
  doc.modules.emplace("m", PresentedModule::cyclic(Ring::integers(), big));
  auto back = io::parse_document(io::serialize(doc));
  EXPECT_EQ(back.modules.at("m").relations()(0, 0), big);
}

TEST(Certificate, SubprojectivityRoundTrip) {
  auto doc = io::parse_document(kMult2);
  const auto& s = doc.complex("S");
  for (const auto* target : {"D", "N", "S", "U"}) {
    const auto& n = doc.complex(target);
    for (auto route : {Route::Definition, Route::HomKVanishing, Route::KernelRoute}) {
      SubprojectivityCertificate cert;
      try {
        cert = is_subprojective_complex(s, n, route);
      } catch (const HypothesisNotMet&) {
        continue;
      }
      auto text = io::encode_certificate(cert, s, n).dump();
      auto back = io::decode_certificate(json::parse(text));
      EXPECT_EQ(back.cert.yes, cert.yes);
      EXPECT_TRUE(verify_certificate(back.cert, back.m, back.n)) << target << " " << to_string(route);
    }
  }
}

TEST(Certificate, TamperedCertificatesFail) {
  auto doc = io::parse_document(kMult2);
  const auto& s = doc.complex("S");
  const auto& n = doc.complex("N");
  auto cert = is_subprojective_complex(s, n, Route::Definition);
  ASSERT_FALSE(cert.yes);
  auto v = io::encode_certificate(cert, s, n);
  v["verdict"] = "YES";
  auto back = io::decode_certificate(v);
  EXPECT_FALSE(verify_certificate(back.cert, back.m, back.n));

  auto d = sphere(PresentedModule::free(Ring::integers(), 1), 0);
  auto yes = is_subprojective_complex(d, doc.complex("D"), Route::Definition);
  auto w = io::encode_certificate(yes, d, doc.complex("D"));
  w["verdict"] = "NO";
  auto back2 = io::decode_certificate(w);
  EXPECT_FALSE(verify_certificate(back2.cert, back2.m, back2.n));
}

TEST(Certificate, NullHomotopyWitnessRoundTrip) {
  auto d = disc(PresentedModule::cyclic(Ring::integers(), 6), 1);
  auto id = identity_chain_map(d);
  auto w = is_null_homotopic(id);
  ASSERT_TRUE(w);
  auto v = io::encode_nullhomotopy(id, w);
  auto f = io::decode_chain_map(v.at("map"), Ring::integers());
  EXPECT_TRUE(verify_homotopy(f, io::decode_witness(v.at("witness"), f.source(), f.target())));
  v["witness"][0]["matrix"] = json::array({json::array({"0"})});
  EXPECT_FALSE(verify_homotopy(f, io::decode_witness(v.at("witness"), f.source(), f.target())));
}
