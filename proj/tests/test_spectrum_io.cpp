#include <catch_amalgamated.hpp>

#include <cstring>
#include <sstream>

#include "steklov/spectrum_io.hpp"

using namespace steklov;

TEST_CASE("spectrum CSV round trip is bit exact") {
    for (int n : {2, 3, 5}) {
        const auto s = steklov_spectrum(make_profile({1.3, 0.2, -0.1, 0.03}, n, 0.25), 25);
        std::stringstream buf;
        write_spectrum_csv(buf, s);
        const auto back = read_spectrum_csv(buf, 0.25);
        CHECK(back.n == s.n);
        CHECK(back.m_max == s.m_max);
        CHECK(back.lambda == s.lambda);
        CHECK(back.crossover_index == s.crossover_index);
        REQUIRE(back.entries.size() == s.entries.size());
        for (std::size_t i = 0; i < s.entries.size(); ++i) {
            CHECK(std::memcmp(&back.entries[i].value, &s.entries[i].value, sizeof(double)) == 0);
            CHECK(back.entries[i].branch == s.entries[i].branch);
            CHECK(back.entries[i].m == s.entries[i].m);
            CHECK(back.entries[i].multiplicity == s.entries[i].multiplicity);
        }
    }
}

TEST_CASE("spectrum CSV format") {
    const auto s = steklov_spectrum(make_profile({1.0}, 2, 0.0), 1);
    std::stringstream buf;
    write_spectrum_csv(buf, s);
    std::string line;
    std::getline(buf, line);
    CHECK(line == "value,branch,m,multiplicity");
    std::getline(buf, line);
    CHECK(line.find(",-,0,1") != std::string::npos);
}

TEST_CASE("malformed spectrum CSV") {
    std::stringstream no_header("1,+,0,1\n");
    CHECK_THROWS_AS(read_spectrum_csv(no_header), UsageError);
    std::stringstream bad_branch("value,branch,m,multiplicity\n1,x,0,1\n2,+,1,2\n");
    CHECK_THROWS_AS(read_spectrum_csv(bad_branch), UsageError);
    std::stringstream bad_number("value,branch,m,multiplicity\n1.0z,+,0,1\n");
    CHECK_THROWS_AS(read_spectrum_csv(bad_number), UsageError);
    std::stringstream no_m1("value,branch,m,multiplicity\n0,-,0,1\n2,+,0,1\n");
    CHECK_THROWS_AS(read_spectrum_csv(no_m1), UsageError);
    std::stringstream with_hint("value,branch,m,multiplicity\n0,-,0,1\n2,+,0,1\n");
    CHECK(read_spectrum_csv(with_hint, 0.0, 4).n == 4);
}

TEST_CASE("signature CSV round trip") {
    const auto sig = trace_det_signature(make_profile({1.3, 0.2}, 3, 0.0), 0, 12);
    std::stringstream buf;
    write_signature_csv(buf, sig);
    const auto back = read_signature_csv(buf);
    REQUIRE(back.entries.size() == sig.entries.size());
    for (std::size_t i = 0; i < sig.entries.size(); ++i) {
        CHECK(back.entries[i].m == sig.entries[i].m);
        CHECK(back.entries[i].trace == sig.entries[i].trace);
        CHECK(back.entries[i].det == sig.entries[i].det);
    }
}
