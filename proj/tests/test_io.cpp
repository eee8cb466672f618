#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "coxdec/coxeter/classify.hpp"
#include "coxdec/io/json.hpp"
#include "coxdec/io/text.hpp"
#include "coxdec/lie/algebra.hpp"

namespace {

using namespace coxdec;
using coxeter::CoxeterSystem;
using coxeter::Family;

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(CoxeterText, ParsesExamples) {
  const auto a2 = io::parse_coxeter_text("2\n1 3\n3 1\n");
  EXPECT_EQ(a2, coxeter::standard_system({Family::A, 2, 0}));
  const auto a1t = io::parse_coxeter_text("2\n1 inf\ninf 1");
  EXPECT_TRUE(a1t.label(0, 1).is_infinite());
  EXPECT_EQ(coxeter::classify(a1t).kind, coxeter::Kind::Affine);
  EXPECT_EQ(io::parse_coxeter_text("0\n").rank(), 0u);
  EXPECT_EQ(io::parse_coxeter_text("  3 \r\n1 2 2\n2 1 5\n2 5 1\n\n\n").label(1, 2), Label(5));
}

TEST(CoxeterText, ReportsLineAndColumn) {
  try {
    io::parse_coxeter_text("2\n1 3\n4 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("not symmetric"), std::string::npos);
  }
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n2 3\n3 1"); }).find("diagonal"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n1 1\n1 1"); }).find("at least 2"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n1 x\nx 1"); }).find("invalid label"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n1 0\n0 1"); }).find("invalid label"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n1 3"); }).find("expected 2 rows"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("2\n1\n3 1"); }).find("row has 1 entries"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text(""); }).find("empty input"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_coxeter_text("-1\n"); }).find("invalid rank"), std::string::npos);
}

TEST(CoxeterText, RoundTrip) {
  std::mt19937_64 rng(3);
  const std::vector<Label> labels{Label(2), Label(3), Label(4), Label(5), Label(6), Label::infinity()};
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = rng() % 6;
    std::vector<std::vector<Label>> m(n, std::vector<Label>(n, Label(1)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i] = labels[rng() % labels.size()];
    const CoxeterSystem cs(m);
    EXPECT_EQ(io::parse_coxeter_text(io::to_text(cs)), cs);
    EXPECT_EQ(io::coxeter_from_json(io::to_json(cs)), cs);
    EXPECT_EQ(io::coxeter_from_json(io::Json::parse(io::to_json(cs).dump())), cs);
  }
}

TEST(CoxeterJson, RejectsMalformed) {
  using io::Json;
  EXPECT_THROW(io::coxeter_from_json(Json::parse(R"({"rank": 2})")), ValidationError);
  EXPECT_THROW(io::coxeter_from_json(Json::parse(R"({"matrix": [[1, 3], [4, 1]]})")), ValidationError);
  EXPECT_THROW(io::coxeter_from_json(Json::parse(R"({"matrix": [[1, "x"], ["x", 1]]})")), ValidationError);
  EXPECT_THROW(io::coxeter_from_json(Json::parse(R"({"rank": 3, "matrix": [[1, 3], [3, 1]]})")), ValidationError);
}

TEST(CayleyText, ParsesAndValidates) {
  EXPECT_EQ(io::parse_cayley_text("1\n0\n").order(), 1u);
  const auto z2 = io::parse_cayley_text("2\n0 1\n1 0\n");
  EXPECT_EQ(z2.order(), 2u);
  EXPECT_EQ(z2.element_order(1), 2u);
  const auto s3 = group::symmetric(3);
  EXPECT_EQ(io::parse_cayley_text(io::to_text(s3)), s3);

  const std::string loop = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
  EXPECT_NE(error_of([&] { io::parse_cayley_text(loop); }).find("associativity fails at"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_cayley_text("2\n1 0\n0 1"); }).find("identity fails"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_cayley_text("2\n0 1\n1 1"); }).find("inverses fail"), std::string::npos);
  EXPECT_NE(error_of([] { io::parse_cayley_text("2\n0 2\n1 0"); }).find("invalid element index"), std::string::npos);
  EXPECT_THROW(io::parse_cayley_text("0\n"), ParseError);
}

TEST(Json, RationalsAlwaysCarryADenominator) {
  EXPECT_EQ(io::rational_string(mpq_class(3)), "3/1");
  EXPECT_EQ(io::rational_string(mpq_class(-2, 4)), "-1/2");
  EXPECT_EQ(io::parse_rational("6/4"), mpq_class(3, 2));
  EXPECT_EQ(io::parse_rational("5"), mpq_class(5));
  EXPECT_THROW(io::parse_rational("1/0"), ValidationError);
  EXPECT_THROW(io::parse_rational("abc"), ValidationError);
  EXPECT_THROW(io::parse_rational(""), ValidationError);
}

TEST(Json, LargeIntegersBecomeStrings) {
  EXPECT_EQ(io::integer_json(mpz_class(51840)), io::Json(51840u));
  const mpz_class big("123456789012345678901234567890");
  EXPECT_EQ(io::integer_json(big), io::Json("123456789012345678901234567890"));
}

TEST(Json, LieRoundTrip) {
  for (const lie::OfSignature sig : {lie::OfSignature{3, 0, 0}, {2, 1, 1}, {4, 0, 0}, {2, 0, 2}}) {
    const auto l = lie::of_algebra(sig);
    const auto j = io::to_json(l);
    EXPECT_EQ(io::lie_from_json(j), l);
    EXPECT_EQ(io::lie_from_json(io::Json::parse(j.dump())), l);
    for (const auto& e : j["brackets"]) EXPECT_NE(e[3].get<std::string>().find('/'), std::string::npos);
  }
}

TEST(Json, LieRejectsMalformed) {
  using io::Json;
  EXPECT_THROW(io::lie_from_json(Json::parse(R"({"brackets": []})")), ValidationError);
  EXPECT_THROW(io::lie_from_json(Json::parse(R"({"dim": 2, "brackets": [[0, 2, 0, "1/1"]]})")), ValidationError);
  EXPECT_THROW(io::lie_from_json(Json::parse(R"({"dim": 2, "brackets": [[0, 0, 1, "1/1"]]})")), ValidationError);
  EXPECT_THROW(io::lie_from_json(Json::parse(R"({"dim": 2, "brackets": [[0, 1, 0, "1/0"]]})")), ValidationError);
  EXPECT_THROW(io::lie_from_json(Json::parse(R"({"dim": 3, "brackets": [[0,1,0,"1/1"],[0,2,0,"1/1"],[1,2,1,"1/1"]]})")),
               ValidationError);
  EXPECT_EQ(io::lie_from_json(Json::parse(R"({"dim": 2, "brackets": [[1, 0, 0, -1]]})")).c(0, 1, 0), 1);
}

TEST(Json, OutputIsDeterministic) {
  const auto cs = coxeter::standard_system({Family::H, 3, 0});
  const auto a = io::to_json(coxeter::classify(cs)).dump();
  const auto b = io::to_json(coxeter::classify(cs)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(io::to_json(lie::of_algebra({3, 0, 1})).dump(), io::to_json(lie::of_algebra({3, 0, 1})).dump());
}

}  // namespace
