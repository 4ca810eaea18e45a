#include <gtest/gtest.h>

#include <string>

#include "isoflow/body_io.hpp"
#include "isoflow/errors.hpp"

using namespace isoflow;

namespace {

std::string data(const char* name) { return std::string(ISOFLOW_TEST_DATA) + "/" + name; }

std::string parse_message(const std::string& text) {
  try {
    parse_body_spec(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(BodyIo, DetectsKinds) {
  EXPECT_EQ(parse_body_spec(R"({"type":"polygon","vertices":[[0,0],[1,0],[0,1]]})").kind, BodyKind::Polygon);
  EXPECT_EQ(parse_body_spec(R"({"type":"fourier","a0":1})").kind, BodyKind::Fourier);
  EXPECT_EQ(parse_body_spec(R"({"type":"grid","samples":[1,1,1,1,1,1,1,1]})").kind, BodyKind::Grid);
}

TEST(BodyIo, ClockwisePolygonIsNormalizedOnLoad) {
  const BodySpec spec = parse_body_spec(R"({"type":"polygon","vertices":[[0,1],[1,1],[1,0],[0,0]]})");
  const FlowBody body = realize(spec);
  EXPECT_DOUBLE_EQ(summary(body).area, 1.0);
}

TEST(BodyIo, SyntaxErrorsCarryTheLine) {
  try {
    load_body_spec(data("bad_syntax.json"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(BodyIo, SchemaErrorsCarryTheField) {
  EXPECT_NE(parse_message(R"({"type":"polygon","vertices":[[0,0],[1,"x"],[0,1]]})").find("vertices[1][1]"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"type":"polygon","vertices":[[0,0],[1],[0,1]]})").find("vertices[1]"),
            std::string::npos);
  EXPECT_NE(parse_message(R"({"type":"fourier","cos":[0.1]})").find("'a0'"), std::string::npos);
  EXPECT_NE(parse_message(R"({"type":"fourier","a0":1,"cos":[0.1,true]})").find("cos[1]"), std::string::npos);
  EXPECT_NE(parse_message(R"({"type":"grid","samples":[1,2,3]})").find("samples"), std::string::npos);
  EXPECT_NE(parse_message(R"({"type":"blob"})").find("unknown body type"), std::string::npos);
  EXPECT_NE(parse_message(R"({"vertices":[]})").find("'type'"), std::string::npos);
  EXPECT_NE(parse_message(R"([1,2])").find("object"), std::string::npos);
}

TEST(BodyIo, InlineOrFile) {
  EXPECT_EQ(load_body_spec(data("unit_square.json")).vertices.size(), 4u);
  EXPECT_EQ(load_body_spec("  {\"type\":\"fourier\",\"a0\":2}").series.a0, 2.0);
  EXPECT_THROW(load_body_spec("/nonexistent/body.json"), ParseError);
}

TEST(BodyIo, RealizeValidates) {
  const BodySpec nonconvex = load_body_spec(data("nonconvex.json"));
  EXPECT_THROW(realize(nonconvex), InvalidBody);
  EXPECT_EQ(std::get<ConvexPolygon>(realize(nonconvex, true)).size(), 3u);
  EXPECT_THROW(realize(parse_body_spec(R"({"type":"fourier","a0":1,"cos":[0,0.5]})")), InvalidBody);
}

TEST(BodyIo, RoundTripIsExact) {
  const FlowBody f = FourierSupport(1.0 / 3.0, {0.1, 1e-17}, {-0.2 / 7.0, 0.0});
  const FlowBody back = realize(parse_body_spec(body_to_json(f)));
  EXPECT_EQ(std::get<FourierSupport>(back).series().cos, std::get<FourierSupport>(f).series().cos);
  EXPECT_EQ(std::get<FourierSupport>(back).series().sin, std::get<FourierSupport>(f).series().sin);
  EXPECT_EQ(std::get<FourierSupport>(back).a0(), std::get<FourierSupport>(f).a0());

  const FlowBody P = ConvexPolygon::from_vertices(std::vector<Point2>{{0.1, 0.2}, {1.0 / 3.0, 0.0}, {0.5, 0.9}});
  const FlowBody Q = realize(parse_body_spec(body_to_json(P)));
  const auto& a = std::get<ConvexPolygon>(P);
  const auto& b = std::get<ConvexPolygon>(Q);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);

  const FlowBody G = realize(load_body_spec(data("ellipse_grid.json")));
  const FlowBody H = realize(parse_body_spec(body_to_json(G)));
  EXPECT_EQ(summary(G).area, summary(H).area);
}
