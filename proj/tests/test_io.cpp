#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <string>

#include "coa/io.hpp"

using namespace coa;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("coa_io_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool error_mentions(const std::function<void()>& f, const std::string& needle) {
    try {
        f();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

} // namespace

TEST(FormatDouble, RoundTripsExactly) {
    Rng rng(5);
    for (int k = 0; k < 2000; ++k) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, rng.uniform_int(-20, 20));
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(-90), "-90");
    EXPECT_THROW(io::parse_double("1.5x"), ParseError);
    EXPECT_THROW(io::parse_double(""), ParseError);
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(io::fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(InstanceFile, RoundTripIsBitExact) {
    const auto dir = scratch("roundtrip");
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        lot::GenerationRanges r;
        r.carry_fraction = {0.0, 1.0};
        const auto in = lot::generate_instance(seed, 1 + seed % 4, 1 + seed % 6, 1 + seed % 3, r);
        const auto path = dir / "inst.json";
        io::write_instance(path, in);
        const auto back = io::read_instance(path);
        EXPECT_EQ(back, in) << "seed " << seed;
        EXPECT_EQ(io::instance_hash(back), io::instance_hash(in));
        EXPECT_EQ(io::instance_text(back), io::read_text(path));
    }
    EXPECT_NE(io::instance_hash(lot::generate_instance(1, 2, 2, 1)),
              io::instance_hash(lot::generate_instance(2, 2, 2, 1)));
}

TEST(InstanceFile, RejectsMalformedInput) {
    const auto dir = scratch("malformed");
    const auto in = lot::generate_instance(3, 2, 3, 1);
    auto j = io::instance_to_json(in);

    auto write_and_read = [&](const io::ordered_json& doc) {
        io::write_text(dir / "bad.json", doc.dump(2));
        return io::read_instance(dir / "bad.json");
    };

    auto wrong_shape = j;
    wrong_shape["demand"][1].erase(0);
    EXPECT_TRUE(error_mentions([&] { write_and_read(wrong_shape); }, "demand"));

    auto extra = j;
    extra["bonus"] = 1;
    EXPECT_TRUE(error_mentions([&] { write_and_read(extra); }, "bonus"));

    auto negative = j;
    negative["demand"][0][2] = -4;
    EXPECT_TRUE(error_mentions([&] { write_and_read(negative); }, "demand[0][2]"));

    auto version = j;
    version["schema_version"] = 99;
    EXPECT_THROW(write_and_read(version), ParseError);

    io::write_text(dir / "broken.json", "{\n  \"n_products\": 1,\n  oops\n}\n");
    EXPECT_TRUE(error_mentions([&] { io::read_instance(dir / "broken.json"); }, "broken.json:3"));
    EXPECT_THROW(io::read_instance(dir / "missing.json"), ParseError);
}

TEST(RunConfigFile, OverlaysDefaultsAndRejectsUnknown) {
    const auto dir = scratch("config");
    io::write_text(dir / "c.json", R"({"schema_version":1,"kind":"run_config","base_seed":9,
        "coa":{"alpha":0.3,"max_living":30},"ga":{"pop_size":12}})");
    const auto rc = io::read_run_config(dir / "c.json");
    EXPECT_EQ(rc.base_seed, 9u);
    EXPECT_EQ(rc.coa.alpha, 0.3);
    EXPECT_EQ(rc.coa.max_living, 30);
    EXPECT_EQ(rc.coa.n_initial, COAConfig{}.n_initial);
    EXPECT_EQ(rc.ga.pop_size, 12);
    EXPECT_EQ(rc.penalty_weight, lot::kDefaultPenaltyWeight);

    const auto again = io::run_config_from_json(io::json::parse(io::run_config_to_json(rc).dump()), "x");
    EXPECT_EQ(io::run_config_to_json(again).dump(), io::run_config_to_json(rc).dump());

    io::write_text(dir / "typo.json", R"({"schema_version":1,"coa":{"alpah":1}})");
    EXPECT_TRUE(error_mentions([&] { io::read_run_config(dir / "typo.json"); }, "alpah"));
    io::write_text(dir / "range.json", R"({"schema_version":1,"coa":{"min_eggs":5,"max_eggs":4}})");
    EXPECT_THROW(io::read_run_config(dir / "range.json"), ParseError);
    io::write_text(dir / "type.json", R"({"schema_version":1,"coa":{"alpha":"big"}})");
    EXPECT_TRUE(error_mentions([&] { io::read_run_config(dir / "type.json"); }, "alpha"));
}

TEST(Csv, WriterAndReaderAgree) {
    const auto dir = scratch("csv");
    io::CsvWriter w({"name", "value", "flag", "count"});
    w.add(std::string("a"), 0.1, true, 3);
    w.add("b", -1e-300, false, std::uint64_t{18446744073709551615ull});
    io::write_text(dir / "t.csv", w.str());
    EXPECT_EQ(w.str().substr(0, 19), "# schema_version=1\n");

    const auto t = io::read_csv(dir / "t.csv");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][t.column("name")], "a");
    EXPECT_EQ(io::parse_double(t.rows[1][t.column("value")]), -1e-300);
    EXPECT_EQ(t.rows[0][t.column("flag")], "true");
    EXPECT_EQ(t.rows[1][t.column("count")], "18446744073709551615");
    EXPECT_THROW(t.column("nope"), ParseError);

    io::write_text(dir / "ragged.csv", "a,b\n1\n");
    EXPECT_TRUE(error_mentions([&] { io::read_csv(dir / "ragged.csv"); }, "ragged.csv:2"));
    io::write_text(dir / "empty.csv", "# schema_version=1\n");
    EXPECT_THROW(io::read_csv(dir / "empty.csv"), ParseError);
}
