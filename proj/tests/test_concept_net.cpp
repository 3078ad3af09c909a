#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "kmap/kmap.hpp"
#include "support.hpp"

namespace {

std::string data_file(const std::string& name) { return std::string(KMAP_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("matrix parser reads the four-node demonstration file") {
    const kmap::ConceptNet net = kmap::parse_matrix(slurp(data_file("demo4.csv")));
    REQUIRE(net.node_count() == 4);
    REQUIRE(net.edge_count() == 8);
    REQUIRE(net.labels() == std::vector<std::string>{"alpha", "1", "2", "beta"});

    CHECK(net.index_of("alpha") == 0);
    CHECK(net.index_of("beta") == 3);
    CHECK(net.edge_weight(0, 1) == 1.0);
    CHECK(net.edge_weight(3, 1) == 1.0);
    CHECK_FALSE(net.edge_weight(3, 0).has_value());
    CHECK_FALSE(net.edge_weight(0, 3).has_value());
    CHECK(net.weight_or_zero(0, 3) == 0.0);

    // Out-edges are sorted by target index.
    const auto& from2 = net.out_edges(2);
    REQUIRE(from2.size() == 3);
    CHECK(from2[0].to == 0);
    CHECK(from2[1].to == 1);
    CHECK(from2[2].to == 3);
}

TEST_CASE("matrix parser skips comments and blank lines") {
    const std::string text =
        "# heading comment\n"
        "\n"
        "node,a,b\n"
        "  # interior comment\n"
        "a,0,2.5\n"
        "\n"
        "b,-1,0\n";
    const kmap::ConceptNet net = kmap::parse_matrix(text);
    CHECK(net.node_count() == 2);
    CHECK(net.edge_count() == 2);
    CHECK(net.edge_weight(0, 1) == 2.5);
    CHECK(net.edge_weight(1, 0) == -1.0);
}

TEST_CASE("matrix parser treats zero cells as missing edges") {
    const kmap::ConceptNet net = kmap::parse_matrix("node,a,b\na,0,0\nb,3,0\n");
    CHECK(net.edge_count() == 1);
    CHECK_FALSE(net.edge_weight(0, 1).has_value());
}

TEST_CASE("matrix parser rejects malformed input") {
    SECTION("header must start with node") {
        CHECK_THROWS_MATCHES(kmap::parse_matrix("x,a,b\na,0,1\nb,1,0\n"), kmap::ParseError,
                             Catch::Matchers::Message("line 1: matrix header must start with 'node'"));
    }
    SECTION("header must declare nodes") {
        CHECK_THROWS_MATCHES(kmap::parse_matrix("node\n"), kmap::ParseError,
                             Catch::Matchers::Message("line 1: matrix header declares no nodes"));
    }
    SECTION("too few rows") {
        CHECK_THROWS_MATCHES(kmap::parse_matrix("node,a,b\na,0,1\n"), kmap::ParseError,
                             Catch::Matchers::Message("line 2: matrix has 1 rows for 2 header columns"));
    }
    SECTION("too many rows") {
        CHECK_THROWS_WITH(kmap::parse_matrix("node,a\na,0\na,0\n"),
                          Catch::Matchers::ContainsSubstring("more rows than header columns"));
    }
    SECTION("ragged row") {
        CHECK_THROWS_MATCHES(kmap::parse_matrix("node,a,b\na,0\nb,1,0\n"), kmap::ParseError,
                             Catch::Matchers::Message("line 2: row has 1 values, expected 2"));
    }
    SECTION("row label mismatch") {
        CHECK_THROWS_MATCHES(
            kmap::parse_matrix("node,a,b\nb,0,1\na,1,0\n"), kmap::ParseError,
            Catch::Matchers::Message("line 2: row label 'b' does not match header label 'a'"));
    }
    SECTION("non-numeric cell names its line and column") {
        try {
            kmap::parse_matrix("node,a,b\na,0,xyz\nb,1,0\n");
            FAIL("expected ParseError");
        } catch (const kmap::ParseError& e) {
            CHECK(e.location() == "line 2, column 3");
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("'xyz' is not a number"));
        }
    }
    SECTION("non-finite cell") {
        CHECK_THROWS_WITH(kmap::parse_matrix("node,a,b\na,0,inf\nb,1,0\n"),
                          Catch::Matchers::ContainsSubstring("is not"));
    }
    SECTION("nonzero diagonal") {
        CHECK_THROWS_MATCHES(
            kmap::parse_matrix("node,a,b\na,1,1\nb,1,0\n"), kmap::ParseError,
            Catch::Matchers::Message("line 2, column 2: diagonal entry for node 'a' must be 0"));
    }
    SECTION("duplicate header label") {
        CHECK_THROWS_WITH(kmap::parse_matrix("node,a,a\na,0,1\na,1,0\n"),
                          Catch::Matchers::ContainsSubstring("duplicate node label 'a'"));
    }
    SECTION("empty input") {
        CHECK_THROWS_MATCHES(kmap::parse_matrix(""), kmap::ParseError,
                             Catch::Matchers::Message("line 0: empty matrix input"));
        CHECK_THROWS_WITH(kmap::parse_matrix("# only a comment\n"),
                          Catch::Matchers::ContainsSubstring("empty matrix input"));
    }
}

TEST_CASE("edge-list parser reads the two-node cycle file") {
    const kmap::ConceptNet net = kmap::parse_edge_list(slurp(data_file("two_cycle.json")));
    REQUIRE(net.node_count() == 2);
    REQUIRE(net.edge_count() == 2);
    CHECK(net.labels() == std::vector<std::string>{"A", "B"});
    CHECK(net.edge_weight(0, 1) == 2.0);
    CHECK(net.edge_weight(1, 0) == 1.0);
}

TEST_CASE("edge-list parser keeps explicit zero-weight edges") {
    const kmap::ConceptNet net = kmap::parse_edge_list(
        R"({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "weight": 0.0}]})");
    REQUIRE(net.edge_count() == 1);
    REQUIRE(net.edge_weight(0, 1).has_value());
    CHECK(*net.edge_weight(0, 1) == 0.0);
    CHECK(net.to_dense()(0, 1) == 0.0);
}

TEST_CASE("edge-list parser rejects malformed input") {
    SECTION("broken JSON") {
        CHECK_THROWS_AS(kmap::parse_edge_list("{nope"), kmap::ParseError);
    }
    SECTION("missing top-level keys") {
        CHECK_THROWS_WITH(kmap::parse_edge_list(R"({"nodes": []})"),
                          Catch::Matchers::ContainsSubstring("'nodes' and 'edges'"));
    }
    SECTION("edge object missing a field") {
        CHECK_THROWS_MATCHES(
            kmap::parse_edge_list(R"({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b"}]})"),
            kmap::ParseError,
            Catch::Matchers::Message("edges[0]: edge needs 'from', 'to' and 'weight'"));
    }
    SECTION("edge endpoints must be strings") {
        CHECK_THROWS_WITH(
            kmap::parse_edge_list(
                R"({"nodes": ["a", "b"], "edges": [{"from": 1, "to": "b", "weight": 1}]})"),
            Catch::Matchers::ContainsSubstring("endpoints must be strings"));
    }
    SECTION("edge weight must be a number") {
        CHECK_THROWS_WITH(
            kmap::parse_edge_list(
                R"({"nodes": ["a", "b"], "edges": [{"from": "a", "to": "b", "weight": "x"}]})"),
            Catch::Matchers::ContainsSubstring("weight must be a number"));
    }
    SECTION("unknown endpoint") {
        CHECK_THROWS_MATCHES(
            kmap::parse_edge_list(
                R"({"nodes": ["a"], "edges": [{"from": "a", "to": "b", "weight": 1}]})"),
            kmap::ParseError,
            Catch::Matchers::Message("edge 0: edge endpoint 'b' is not a declared node"));
    }
    SECTION("self-loop") {
        CHECK_THROWS_WITH(
            kmap::parse_edge_list(
                R"({"nodes": ["a"], "edges": [{"from": "a", "to": "a", "weight": 1}]})"),
            Catch::Matchers::ContainsSubstring("self-loop on node 'a'"));
    }
    SECTION("duplicate edge") {
        CHECK_THROWS_WITH(
            kmap::parse_edge_list(
                R"({"nodes": ["a", "b"],
                    "edges": [{"from": "a", "to": "b", "weight": 1},
                              {"from": "a", "to": "b", "weight": 2}]})"),
            Catch::Matchers::ContainsSubstring("duplicate edge 'a' -> 'b'"));
    }
}

TEST_CASE("check_definition reports every issue with a stable code") {
    const kmap::NetValidationReport report = kmap::check_definition(
        {"a", "", "a"},
        {{"a", "z", 1.0},
         {"a", "a", 1.0},
         {"a", "", std::numeric_limits<double>::infinity()},
         {"a", "", 2.0}});
    REQUIRE_FALSE(report.ok());
    std::vector<std::string> codes;
    for (const auto& issue : report.errors) codes.push_back(issue.code);
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("empty-label")));
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("duplicate-label")));
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("unknown-node")));
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("self-loop")));
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("bad-weight")));
    CHECK_THAT(codes, Catch::Matchers::Contains(std::string("duplicate-edge")));
    // Edge issues carry their position.
    bool saw_edge_zero = false;
    for (const auto& issue : report.errors)
        if (issue.location == "edge 0") saw_edge_zero = true;
    CHECK(saw_edge_zero);
}

TEST_CASE("validate flags sinks and isolated nodes") {
    SECTION("demonstration net is clean") {
        const kmap::NetValidationReport report = kmap::validate(testutil::demo4());
        CHECK(report.ok());
        CHECK(report.warnings.empty());
    }
    SECTION("nine-concept map has three sink nodes") {
        const kmap::ConceptNet net = kmap::parse_matrix(slurp(data_file("san_diego.csv")));
        REQUIRE(net.node_count() == 9);
        REQUIRE(net.edge_count() == 16);
        const kmap::NetValidationReport report = kmap::validate(net);
        std::vector<std::string> sinks;
        for (const auto& w : report.warnings)
            if (w.code == "sink") sinks.push_back(w.message);
        REQUIRE(sinks.size() == 3);
        CHECK_THAT(sinks[0], Catch::Matchers::ContainsSubstring("'4'"));
        CHECK_THAT(sinks[1], Catch::Matchers::ContainsSubstring("'6'"));
        CHECK_THAT(sinks[2], Catch::Matchers::ContainsSubstring("'7'"));
        // Node 4 also receives nothing, so it is flagged isolated on top.
        std::vector<std::string> isolated;
        for (const auto& w : report.warnings)
            if (w.code == "isolated") isolated.push_back(w.message);
        REQUIRE(isolated.size() == 1);
        CHECK_THAT(isolated[0], Catch::Matchers::ContainsSubstring("'4'"));
    }
    SECTION("a node with no edges at all is both sink and isolated") {
        const kmap::ConceptNet net({"a", "b", "c"}, {{"a", "b", 1.0}});
        const kmap::NetValidationReport report = kmap::validate(net);
        std::vector<std::string> codes;
        for (const auto& w : report.warnings) codes.push_back(w.code + ":" + w.message);
        // b is a sink but not isolated; c is both.
        REQUIRE(report.warnings.size() == 3);
        CHECK_THAT(codes[0], Catch::Matchers::ContainsSubstring("sink:node 'b'"));
        CHECK_THAT(codes[1], Catch::Matchers::ContainsSubstring("sink:node 'c'"));
        CHECK_THAT(codes[2], Catch::Matchers::ContainsSubstring("isolated:node 'c'"));
    }
}

TEST_CASE("net construction rejects invalid definitions") {
    CHECK_THROWS_WITH(kmap::ConceptNet({"a", "a"}, {}),
                      Catch::Matchers::StartsWith("invalid net definition:"));
    CHECK_THROWS_WITH(kmap::ConceptNet({"a"}, {{"a", "a", 1.0}}),
                      Catch::Matchers::ContainsSubstring("self-loop"));
}

TEST_CASE("lookups of unknown labels") {
    const kmap::ConceptNet net = testutil::demo4();
    CHECK_THROWS_MATCHES(net.index_of("nope"), kmap::UnknownNodeError,
                         Catch::Matchers::Message("unknown node 'nope'"));
    CHECK_FALSE(net.find("nope").has_value());
    CHECK(net.find("beta") == 3);
}

TEST_CASE("labels are opaque strings") {
    const kmap::ConceptNet net =
        kmap::parse_matrix("node,fuel economy,trip-cost #1\nfuel economy,0,2\ntrip-cost #1,0,0\n");
    CHECK(net.label(0) == "fuel economy");
    CHECK(net.label(1) == "trip-cost #1");
    CHECK(net.edge_weight(0, 1) == 2.0);
}

TEST_CASE("to_dense mirrors the adjacency structure") {
    const kmap::ConceptNet net = testutil::demo4();
    const kmap::DenseMatrix w = net.to_dense();
    REQUIRE(w.rows() == 4);
    REQUIRE(w.cols() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(w(i, j) == net.weight_or_zero(i, j));
    for (int i = 0; i < 4; ++i) CHECK(w(i, i) == 0.0);
}

TEST_CASE("edge_specs lists edges in source-then-target order") {
    const kmap::ConceptNet net = testutil::demo4();
    const std::vector<kmap::EdgeSpec> specs = net.edge_specs();
    REQUIRE(specs.size() == 8);
    CHECK(specs.front().from == "alpha");
    CHECK(specs.front().to == "1");
    CHECK(specs.back().from == "beta");
    CHECK(specs.back().to == "1");
    for (std::size_t i = 1; i < specs.size(); ++i) {
        const int prev_from = net.index_of(specs[i - 1].from);
        const int cur_from = net.index_of(specs[i].from);
        CHECK(prev_from <= cur_from);
        if (prev_from == cur_from)
            CHECK(net.index_of(specs[i - 1].to) < net.index_of(specs[i].to));
    }
}

TEST_CASE("render_matrix round-trips through parse_matrix") {
    testutil::Rng rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const kmap::ConceptNet net = testutil::random_net(rng, rng.uniform_int(2, 7));
        const std::string rendered = kmap::render_matrix(net);
        const kmap::ConceptNet again = kmap::parse_matrix(rendered);
        REQUIRE(again.labels() == net.labels());
        CHECK(again.to_dense() == net.to_dense());
        // A second render is byte-identical: the format is canonical.
        CHECK(kmap::render_matrix(again) == rendered);
    }
}

TEST_CASE("format_sig9 is stable and compact") {
    CHECK(kmap::format_sig9(0.0) == "0");
    CHECK(kmap::format_sig9(-0.0) == "0");
    CHECK(kmap::format_sig9(2.4) == "2.4");
    CHECK(kmap::format_sig9(-1.128) == "-1.128");
    CHECK(kmap::format_sig9(0.185) == "0.185");
    CHECK(kmap::format_sig9(1.0 / 3.0) == "0.333333333");
    CHECK(kmap::format_sig9(1e-300) == "1e-300");
    // Same value, same bytes — the CLI's determinism rests on this.
    CHECK(kmap::format_sig9(0.1 + 0.2) == kmap::format_sig9(0.30000000000000004));
}
