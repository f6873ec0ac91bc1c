#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "wsb/export_tables.hpp"

using namespace wsb;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("exported tables match the golden file byte for byte") {
    std::string golden = read_file(std::string(WSB_GOLDEN_DIR) + "/lambda_tables_t1.txt");
    CHECK(export_lambda_tables(1) == golden);
}

TEST_CASE("exported tables contain the published one-bit-promotion rows") {
    std::string text = export_lambda_tables(1);
    auto has = [&](const std::string& row) {
        INFO(row);
        CHECK(text.find(row + "\n") != std::string::npos);
    };
    // first branch: trailing 10 promoted to 11
    has("100101 -> 110101");
    has("011001 -> 011101");
    has("101001 -> 101101");
    has("001110 -> 001111");
    has("010110 -> 010111");
    has("100110 -> 100111");
    has("011010 -> 011011");
    has("101010 -> 101011");
    has("110010 -> 110011");
    // second branch: the 0 after the 10-run promoted
    has("110100 -> 110110");
    has("011100 -> 011110");
    has("101100 -> 101110");
    has("111000 -> 111010");
    has("110001 -> 111001");
    // the empty set and the full set
    has("000000 -> 000001");
    has("111111 -> 111100");
    // two-classes-down rows
    has("100011 -> 100000");
    has("010011 -> 010000");
    has("001101 -> 001000");
    has("000111 -> 000100");
    has("001011 -> 000010");
    // final rewiring
    has("break 010110 -> 010111");
    has("break 011100 -> 011110");
    has("add 010101 -> 010111");
    has("add 010110 -> 011110");
    has("add 011100 -> 111100");
}

TEST_CASE("exported rows cover exactly the divisible-by-three sets") {
    for (int t : {1, 2}) {
        int n = 6 * t;
        std::string text = export_lambda_tables(t);
        std::size_t arrow_rows = 0;
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.empty() || line[0] == '[') continue;
            if (line.find(" -> ") != std::string::npos) ++arrow_rows;
        }
        std::size_t expect = 0;
        for (IdSet S = 0; S <= full_set(n); ++S) {
            if (set_size(S) % 3 == 0) ++expect;
        }
        // every mod-3 set except the alternating vector, plus five rewiring rows
        CHECK(arrow_rows == expect - 1 + 5);
    }
}
