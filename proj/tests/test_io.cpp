#include <catch2/catch_amalgamated.hpp>

#include "qgain/io.hpp"
#include "qgain/random.hpp"

using namespace qgain;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string parse_error_message(std::string_view text) {
    try {
        parse_matrix_json(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
        return e.what();
    }
    FAIL("expected a parse error");
    return {};
}

} // namespace

TEST_CASE("matrix files parse", "[io]") {
    const auto m = parse_matrix_json(R"({"dim": 2, "entries": [[0.5, 0], [0, -0.25], [0, 0.25], [0.5, 0]]})");
    CHECK(m.rows() == 2);
    CHECK(m(0, 1) == ComplexScalar(0, -0.25));
    CHECK(m(1, 0) == ComplexScalar(0, 0.25));

    const auto with_comment = parse_matrix_json(R"({"comment": "x", "dim": 1, "entries": [[1, 0]]})");
    CHECK(with_comment(0, 0) == ComplexScalar(1));

    const auto file = read_matrix_file(std::string(QGAIN_DATA_DIR) + "/two_mode_decomposable.json");
    CHECK(file.rows() == 4);
}

TEST_CASE("matrix file errors name the first bad token", "[io]") {
    CHECK_THAT(parse_error_message(R"({"dim": 2, "entries": [[0.5, 0], [0, oops]]})"), ContainsSubstring("at byte 38"));
    CHECK_THAT(parse_error_message(R"({"dim": 1, "entries": [[1, "0"]]})"), ContainsSubstring("/entries/0/1"));
    CHECK_THAT(parse_error_message(R"({"dim": 2, "entries": [[1, 0]]})"), ContainsSubstring("expected 4 pairs, found 1"));
    CHECK_THAT(parse_error_message(R"({"dim": 1, "entries": [[1, 0, 0]]})"), ContainsSubstring("/entries/0"));
    CHECK_THAT(parse_error_message(R"({"dim": -1, "entries": []})"), ContainsSubstring("/dim"));
    CHECK_THAT(parse_error_message(R"({"dim": 1.5, "entries": []})"), ContainsSubstring("/dim"));
    CHECK_THAT(parse_error_message(R"({"entries": []})"), ContainsSubstring("/dim: missing"));
    CHECK_THAT(parse_error_message(R"({"dim": 1, "entries": [[1, 0]], "extra": 1})"), ContainsSubstring("/extra"));
    CHECK_THAT(parse_error_message(R"([1, 2])"), ContainsSubstring("expected an object"));
    CHECK_THAT(parse_error_message(""), ContainsSubstring("at byte"));

    try {
        read_matrix_file("/nonexistent/file.json");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("matrix_to_json round trips exactly", "[io][property]") {
    auto rng = make_rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_density_matrix(1 + trial % 4, rng);
        CHECK(parse_matrix_json(matrix_to_json(m, "trial")) == m);
    }
}

TEST_CASE("twelve significant digits", "[io]") {
    CHECK(format_sig12(std::log(2.0)) == "0.693147180560");
    CHECK(format_sig12(0.0) == "0.000000000000");
    CHECK(format_sig12(-0.0) == "0.000000000000");
    CHECK(format_sig12(std::log(3.0)) == "1.09861228867");
    CHECK(format_sig12(1.0) == "1.00000000000");
    CHECK(format_sig12(0.1) == "0.100000000000");
    CHECK(format_sig12(-0.25) == "-0.250000000000");
    CHECK(format_sig12(2.0 / 3) == "0.666666666667");
    CHECK(format_sig12(0.000123456789012345) == "0.000123456789");
    CHECK(format_sig12(-3.5e-15) == "0.000000000000");
    CHECK(format_sig12(4e-13) == "0.000000000000");
    CHECK(format_sig12(6e-13) == "0.000000000001");
    CHECK(format_sig12(9.9999999999996) == "10.0000000000");
    CHECK(format_sig12(1e12) == "1000000000000");
}

TEST_CASE("gamma grids", "[io]") {
    SECTION("range") {
        const auto g = parse_gamma_grid("0:1:0.1");
        REQUIRE(g.size() == 11);
        CHECK(g.front() == 0.0);
        CHECK(g.back() == 1.0);
        CHECK(std::is_sorted(g.begin(), g.end()));
        CHECK(parse_gamma_grid("0:1:0.25") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
        CHECK(parse_gamma_grid("0.5:0.5:0.1") == std::vector<double>{0.5});
    }
    SECTION("list is sorted and deduplicated") {
        CHECK(parse_gamma_grid("1,0,0.5,0") == std::vector<double>{0, 0.5, 1});
        CHECK(parse_gamma_grid("0") == std::vector<double>{0});
    }
    SECTION("malformed") {
        for (const char* bad : {"", "a", "0:1", "0:1:0", "1:0:0.1", "0,,1", "0:1:0.1:2", "0.5x"}) {
            CHECK_THROWS_AS(parse_gamma_grid(bad), Error);
        }
    }
    SECTION("out-of-range values parse; range checks happen at use") {
        CHECK(parse_gamma_grid("1.5") == std::vector<double>{1.5});
    }
}

TEST_CASE("sweep CSV", "[io]") {
    SweepRow row;
    row.gamma = 0.5;
    row.entropy_in = std::log(2.0);
    row.entropy_out = 1.5 * std::log(2.0);
    row.lhs = 0.5 * std::log(2.0);
    row.rhs = 0.5 * std::log(2.0);
    row.slack = 0.0;
    const auto csv = sweep_to_csv({row});
    CHECK(csv ==
          "gamma,entropy_in,entropy_out,lhs_gain,rhs_bound,slack\n"
          "0.500000000000,0.693147180560,1.03972077084,0.346573590280,0.346573590280,0.000000000000\n");
}
