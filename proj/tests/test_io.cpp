#include <gtest/gtest.h>

#include "oracles.hpp"
#include "segre/error.hpp"
#include "segre/io.hpp"

using namespace segre;
using segre::io::Json;

TEST(Io, ScalarStrings) {
  EXPECT_EQ(io::to_json(oracle::frac(-3, 6)), Json("-1/2"));
  EXPECT_EQ(io::scalar_from_json(Json("4/6")), oracle::frac(2, 3));
  EXPECT_EQ(io::scalar_from_json(Json(5)), Scalar(5));
  EXPECT_THROW(io::scalar_from_json(Json(0.5)), ParseError);
  EXPECT_THROW(io::scalar_from_json(Json("1/0")), ParseError);
}

TEST(Io, MatrixRoundTrip) {
  Matrix m{{1, 0}, {oracle::frac(1, 3), -2}};
  EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_THROW(io::matrix_from_json(Json::parse(R"([["1","2"],["3"]])")), ParseError);
}

TEST(Io, InstanceRoundTrip) {
  auto inst = TensorSpaceInstance::generate({4, 3}, 1, true);
  Json j = io::instance_to_json(inst);
  EXPECT_EQ(j["quadric_count"], 18);
  EXPECT_TRUE(j.contains("base_point"));
  auto back = io::instance_from_json(j);
  EXPECT_EQ(back.hidden().scramble, inst.hidden().scramble);
  EXPECT_EQ(*back.base_point(), *inst.base_point());
  EXPECT_EQ(io::dump(io::instance_to_json(back)), io::dump(j));
}

TEST(Io, MalformedInstances) {
  Json j = io::instance_to_json(TensorSpaceInstance::generate({2, 2}, 7, false));
  Json missing = j;
  missing.erase("scramble");
  EXPECT_THROW(io::instance_from_json(missing), ParseError);
  Json wrong = j;
  wrong["m"] = 3;
  EXPECT_THROW(io::instance_from_json(wrong), ParseError);
  EXPECT_THROW(io::instance_from_json(Json::array()), ParseError);
}

TEST(Io, ReportFields) {
  RoundTripReport r;
  r.success = true;
  r.m = 2;
  r.n = 2;
  r.lambda = oracle::frac(3, 2);
  r.sheet_dims = {2, 2};
  Json j = io::report_to_json(r);
  EXPECT_EQ(j["lambda"], "3/2");
  EXPECT_EQ(j["sheet_dims"], Json::parse("[2,2]"));
  r.success = false;
  EXPECT_TRUE(io::report_to_json(r)["lambda"].is_null());
}

TEST(Io, MissingFile) { EXPECT_THROW(io::read_file("/nonexistent/instance.json"), ParseError); }
