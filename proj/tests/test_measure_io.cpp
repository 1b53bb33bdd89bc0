#include <doctest.h>

#include <fstream>

#include "exind/measure_io.hpp"
#include "fixtures.hpp"

using namespace exind;
using namespace exind::testing;

TEST_SUITE("measure_io") {
  TEST_CASE("parses the canonical files") {
    const auto m = parse_measure(R"({"d": 3, "atoms": [{"omega": [0.5, 0.5, 0.0], "mass": 2.0},
                                                       {"omega": [0, 0, 1], "mass": 1}]})");
    CHECK(m == m_blk());
  }

  TEST_CASE("malformed documents are ParseErrors") {
    CHECK_THROWS_AS(parse_measure("{"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"atoms": []})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 0, "atoms": []})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 65, "atoms": []})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, "x"], "mass": 1}]})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, 1]}]})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, -0.5], "mass": 1}]})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, 1], "mass": -1}]})"), ParseError);
    // JSON has no NaN literal; huge exponents overflow to inf.
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, 1e999], "mass": 1}]})"), ParseError);
    CHECK_THROWS_AS(parse_measure(R"({"d": 2, "atoms": [{"omega": [1, NaN], "mass": 1}]})"), ParseError);
  }

  TEST_CASE("invalid but well-formed content is left for validate") {
    const auto zero = parse_measure(R"({"d": 2, "atoms": [{"omega": [0, 0], "mass": 1}]})");
    REQUIRE(validate(zero).size() == 1);
    CHECK(validate(zero)[0].code == ViolationCode::kAllZeroDirection);

    const auto short_atom = parse_measure(R"({"d": 3, "atoms": [{"omega": [1, 1], "mass": 1}]})");
    CHECK(validate(short_atom)[0].code == ViolationCode::kDimensionMismatch);
  }

  TEST_CASE("tiny negatives snap to zero instead of failing") {
    const auto m = parse_measure(R"({"d": 2, "atoms": [{"omega": [1, -1e-13], "mass": 1},
                                                       {"omega": [0, 1], "mass": 1}]})");
    CHECK(m == m_ind());
  }

  TEST_CASE("round trip through JSON and disk") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto m = random_measure(s);
      CHECK(parse_measure(to_json(m).dump()) == m);
    }
    const auto path = temp_dir() / "roundtrip.json";
    {
      std::ofstream f(path);
      f << to_json(m_blk()).dump(2);
    }
    CHECK(load_measure(path) == m_blk());
    CHECK_THROWS(load_measure(temp_dir() / "missing.json"));
  }
}
