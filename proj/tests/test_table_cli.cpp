#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "doublewell/parallel.hpp"
#include "doublewell/table.hpp"

TEST_CASE("table csv formatting is byte-stable") {
    dw::Table t({"a", "b", "c"});
    t.add_row({1.0, std::int64_t(3), std::string("x")});
    t.add_row({std::numeric_limits<double>::infinity(), std::int64_t(-1), std::string("y")});
    t.add_row({0.1234567890123456789, std::int64_t(0), std::string("z")});
    std::ostringstream o1, o2;
    t.write_csv(o1);
    t.write_csv(o2);
    CHECK(o1.str() == o2.str());
    CHECK(o1.str() ==
          "a,b,c\n"
          "1,3,x\n"
          "inf,-1,y\n"
          "0.12345678901234568,0,z\n");
}

TEST_CASE("table json mirrors columns as arrays") {
    dw::Table t({"v"});
    t.add_row({2.5});
    t.add_row({std::numeric_limits<double>::infinity()});
    std::ostringstream os;
    t.write_json(os);
    CHECK(os.str().find("\"v\"") != std::string::npos);
    CHECK(os.str().find("2.5") != std::string::npos);
    CHECK(os.str().find("\"inf\"") != std::string::npos);
}

TEST_CASE("17 significant digits round-trip doubles") {
    for (double v : {0.3331858032144684, 1e-300, -3.14159265358979312, 7.0}) {
        double back = std::stod(dw::Table::format_double(v));
        CHECK(back == v);
    }
}

TEST_CASE("parallel_for covers every index exactly once, any thread count") {
    for (int threads : {1, 2, 7}) {
        std::vector<int> hits(1000, 0);
        dw::parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i] += 1; });
        for (int h : hits) CHECK(h == 1);
    }
}
