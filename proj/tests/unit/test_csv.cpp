#include "detail/csv.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace gradsharp::detail;

TEST_CASE("doubles format in shortest round-trip form")
{
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(3.0) == "3");
    CHECK(format_double(-0.0) == "-0");
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = d(rng);
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("fields are quoted only when needed and parse back")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const std::vector<std::string> fields{"x", "a,b", "q\"q", "", "tail"};
    CHECK(parse_csv_line(csv_line(fields)) == fields);
    CHECK(parse_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
}
