#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include <qtomo/selftest.hpp>

TEST_CASE("acceptance criteria") {
    auto results = qtomo::run_acceptance();
    REQUIRE(results.size() == 14);
    for (const auto& r : results) {
        std::printf("[%s] %2d %s%s%s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str());
        std::fflush(stdout);
        INFO(r.name << (r.detail.empty() ? "" : ": " + r.detail));
        CHECK(r.passed);
    }
}
