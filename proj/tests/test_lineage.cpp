#include <catch2/catch_amalgamated.hpp>

#include "slice/errors.hpp"
#include "slice/lineage.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace slice;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("split_codeend basic splits", "[lineage]") {
    CHECK(split_codeend("a <CODEEND> b") == std::vector<std::string>{"a", "b"});
    CHECK(split_codeend("") == std::vector<std::string>{});
    CHECK(split_codeend("   ") == std::vector<std::string>{});
    CHECK(split_codeend("only") == std::vector<std::string>{"only"});
    // consecutive separators yield no empty elements
    CHECK(split_codeend("a <CODEEND> <CODEEND> b") == std::vector<std::string>{"a", "b"});
    // order preserved
    CHECK(split_codeend("z <CODEEND> a <CODEEND> m") ==
          std::vector<std::string>{"z", "a", "m"});
}

TEST_CASE("split_codeend properties", "[lineage]") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> pieces(0, 6);
    std::uniform_int_distribution<int> chars(0, 25);
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        int n = pieces(rng);
        for (int i = 0; i < n; ++i) {
            if (i > 0) text += " <CODEEND> ";
            int len = 1 + chars(rng) % 8;
            for (int k = 0; k < len; ++k) text += static_cast<char>('a' + chars(rng));
        }
        for (const std::string& piece : split_codeend(text)) {
            CHECK(piece.find(kCodeEnd) == std::string::npos);
            CHECK(trim(piece).size() == piece.size());
            CHECK_FALSE(piece.empty());
        }
    }
}

TEST_CASE("parse_schema_list splits, trims, dedups", "[lineage]") {
    CHECK(parse_schema_list("amount, customer_id") ==
          std::set<std::string>{"amount", "customer_id"});
    CHECK(parse_schema_list("a,a") == std::set<std::string>{"a"});
    CHECK(parse_schema_list("") == std::set<std::string>{});
    CHECK(parse_schema_list("  x  ") == std::set<std::string>{"x"});
    // case preserved
    CHECK(parse_schema_list("Amount,amount") == std::set<std::string>{"Amount", "amount"});
}

TEST_CASE("parse_table_list splits on ; and , outside parens", "[lineage]") {
    CHECK(parse_table_list("t1; t2") == std::set<std::string>{"t1", "t2"});
    CHECK(parse_table_list("t1") == std::set<std::string>{"t1"});
    CHECK(parse_table_list("t1, t2") == std::set<std::string>{"t1", "t2"});
    CHECK(parse_table_list("f(a, b); t2") == std::set<std::string>{"f(a, b)", "t2"});
    CHECK(parse_table_list("") == std::set<std::string>{});
}

TEST_CASE("idempotence of list parsing on canonical output", "[lineage]") {
    auto schemas = parse_schema_list("gamma, alpha , beta, alpha");
    CHECK(parse_schema_list(join_schema_field(schemas)) == schemas);
    auto tables = parse_table_list("db.t1; db.t2, raw(x, y)");
    CHECK(parse_table_list(join_table_field(tables)) == tables);
}

TEST_CASE("parse_lineage_dict happy path", "[lineage]") {
    SchemaLineage lineage = parse_lineage_dict(
        R"({"source_schema":"a,b","source_table":"t","transformation":"x AS y","aggregation":""})");
    CHECK(lineage.source_schema == std::set<std::string>{"a", "b"});
    CHECK(lineage.source_table == std::set<std::string>{"t"});
    CHECK(lineage.transformation == std::vector<std::string>{"x AS y"});
    CHECK(lineage.aggregation.empty());
}

TEST_CASE("parse_lineage_dict key set errors", "[lineage]") {
    auto code_of = [](const std::string& text) {
        try {
            parse_lineage_dict(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::ConfigError; // sentinel: no error raised
    };
    // missing key
    CHECK(code_of(R"({"source_schema":"a","source_table":"t","transformation":"f"})") ==
          ErrorCode::KeySetMismatch);
    // misnamed key (case-sensitive)
    CHECK(code_of(R"({"Source_schema":"a","source_table":"t","transformation":"f","aggregation":""})") ==
          ErrorCode::KeySetMismatch);
    // extra key
    CHECK(code_of(
              R"({"source_schema":"a","source_table":"t","transformation":"f","aggregation":"","extra":"x"})") ==
          ErrorCode::KeySetMismatch);
    // duplicate key
    CHECK(code_of(
              R"({"source_schema":"a","source_schema":"b","source_table":"t","transformation":"f","aggregation":""})") ==
          ErrorCode::KeySetMismatch);
    // not an object
    CHECK(code_of(R"(["a"])") == ErrorCode::MalformedDict);
    // non-string value
    CHECK(code_of(
              R"({"source_schema":"a","source_table":"t","transformation":3,"aggregation":""})") ==
          ErrorCode::MalformedDict);
    // trailing garbage
    CHECK(code_of(
              R"({"source_schema":"a","source_table":"t","transformation":"f","aggregation":""} x)") ==
          ErrorCode::MalformedDict);
}

TEST_CASE("strict vs lenient dictionary syntax", "[lineage]") {
    const std::string single_quoted =
        R"({'source_schema':'a','source_table':'t','transformation':'f','aggregation':''})";
    CHECK_THROWS_AS(parse_lineage_dict(single_quoted, DictSyntax::strict), Error);
    SchemaLineage lenient = parse_lineage_dict(single_quoted, DictSyntax::lenient);
    CHECK(lenient.source_schema == std::set<std::string>{"a"});

    const std::string trailing_comma =
        R"({"source_schema":"a","source_table":"t","transformation":"f","aggregation":"",})";
    CHECK_THROWS_AS(parse_lineage_dict(trailing_comma, DictSyntax::strict), Error);
    CHECK_NOTHROW(parse_lineage_dict(trailing_comma, DictSyntax::lenient));
}

TEST_CASE("string escapes round-trip through the dict parser", "[lineage]") {
    SchemaLineage lineage;
    lineage.source_schema = {"amount"};
    lineage.source_table = {"t"};
    lineage.transformation = {"F.when(F.col(\"a\").isNull(), F.lit(\"x\\\\y\"))",
                              "line\nbreak"};
    lineage.aggregation = {};
    CHECK(parse_lineage_dict(canonical_serialize(lineage)) == lineage);
}

TEST_CASE("canonical_serialize sorts and renders deterministically", "[lineage]") {
    SchemaLineage lineage;
    lineage.source_schema = {"b", "a"};
    lineage.source_table = {"t2", "t1"};
    lineage.transformation = {"first", "second"};
    std::string text = canonical_serialize(lineage);
    CHECK(text.find("\"source_schema\": \"a, b\"") != std::string::npos);
    CHECK(text.find("\"source_table\": \"t1; t2\"") != std::string::npos);
    CHECK(text.find("\"transformation\": \"first <CODEEND> second\"") != std::string::npos);
    CHECK(text.find("\"aggregation\": \"\"") != std::string::npos);
}

TEST_CASE("round-trip property over generated lineages", "[lineage]") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> count(0, 5);
    std::uniform_int_distribution<int> chars(0, 61);
    auto word = [&](int min_len) {
        static const char alphabet[] =
            "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
        int len = min_len + count(rng);
        std::string out;
        for (int i = 0; i < len; ++i) out += alphabet[chars(rng)];
        return out;
    };
    for (int trial = 0; trial < 300; ++trial) {
        SchemaLineage lineage;
        for (int i = count(rng); i > 0; --i) lineage.source_schema.insert(word(1));
        for (int i = count(rng); i > 0; --i) lineage.source_table.insert(word(1));
        for (int i = count(rng); i > 0; --i) {
            lineage.transformation.push_back(word(1) + "(\"" + word(0) + "\") AS " + word(1));
        }
        for (int i = count(rng); i > 0; --i) {
            lineage.aggregation.push_back(word(1) + "() GROUP BY " + word(1));
        }
        SchemaLineage round = parse_lineage_dict(canonical_serialize(lineage));
        REQUIRE(round == lineage);
    }
}

TEST_CASE("worked example record parses to expected shape", "[lineage]") {
    // Mirrors the fleet-billing fixture's aggregate column layout.
    const std::string text = read_file(std::string(SLICE_SOURCE_DIR) +
                                       "/tests/fixtures/worked_lineage.json");
    SchemaLineage lineage = parse_lineage_dict(text);
    CHECK(lineage.source_schema.size() == 13);
    CHECK(lineage.source_schema.contains("transaction_timestamp"));
    CHECK(lineage.source_table.size() == 3);
    for (const auto& table : lineage.source_table) {
        CHECK(table.starts_with("abfss://"));
    }
    CHECK(lineage.transformation.size() == 21);
    CHECK(lineage.transformation.front() == "C.customer_id AS CustomerId");
    REQUIRE(lineage.aggregation.size() == 1);
    CHECK(lineage.aggregation.front().starts_with("AVG() GROUP BY"));
    // full round-trip
    CHECK(parse_lineage_dict(canonical_serialize(lineage)) == lineage);
}

TEST_CASE("lineage_findings flags rule violations", "[lineage]") {
    SchemaLineage good;
    good.source_schema = {"a"};
    good.source_table = {"t"};
    good.transformation = {"a AS b"};
    CHECK(lineage_findings(good).empty());

    SchemaLineage bad;
    bad.source_schema = {"a <CODEEND> b"};
    bad.source_table = {"t"};
    CHECK_FALSE(lineage_findings(bad).empty());

    SchemaLineage comma;
    comma.source_schema = {"a,b"}; // breaks round-trip: comma splits on parse
    comma.source_table = {"t"};
    CHECK_FALSE(lineage_findings(comma).empty());
}
