#include <gtest/gtest.h>

#include <filesystem>

#include "generators.hpp"
#include "orthomat/io.hpp"
#include "orthomat/qkernel.hpp"
#include "orthomat/recurrence.hpp"

using namespace orthomat;
using io::Json;

namespace {

std::string temp_file(const std::string& name, const std::string& text)
{
    const auto path = std::filesystem::temp_directory_path() / ("orthomat_io_" + name);
    io::write_text(path.string(), text);
    return path.string();
}

}  // namespace

TEST(Mode, ParseAndPrint)
{
    for (auto m : {io::Mode::Float, io::Mode::Wide, io::Mode::Rational}) EXPECT_EQ(io::parse_mode(io::to_string(m)), m);
    EXPECT_THROW(io::parse_mode("exact"), InputError);
}

TEST(ParseScalar, RationalModeRejectsDecimals)
{
    EXPECT_EQ(io::parse_scalar<Rational>(Json(3), "x"), Rational(3));
    EXPECT_EQ(io::parse_scalar<Rational>(Json("-2/6"), "x"), Rational(-1, 3));
    try {
        io::parse_scalar<Rational>(Json(0.5), "m[1]");
        FAIL() << "no exception";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("p/q"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("m[1]"), std::string::npos);
    }
    EXPECT_THROW(io::parse_scalar<Rational>(Json("0.5"), "x"), InputError);
    EXPECT_THROW(io::parse_scalar<Rational>(Json(true), "x"), InputError);
}

TEST(ParseScalar, FloatModesAcceptFractions)
{
    EXPECT_DOUBLE_EQ(io::parse_scalar<double>(Json("1/4"), "x"), 0.25);
    EXPECT_DOUBLE_EQ(io::parse_scalar<double>(Json(0.125), "x"), 0.125);
    EXPECT_DOUBLE_EQ(io::parse_scalar<double>(Json("2.5"), "x"), 2.5);
    EXPECT_EQ(io::parse_scalar<Wide>(Json("1/3"), "x"), Wide(1) / 3);
}

TEST(MomentFile, RoundTripExact)
{
    const auto m = catalog_moments<Rational>(Family::Uniform, 9);
    const Json doc = io::encode_moments(m);
    EXPECT_EQ(doc["mode"], "rational");
    EXPECT_EQ(doc["moments"][2], "1/3");
    const auto back = io::moments_from_json<Rational>(doc, "doc");
    EXPECT_EQ(back.values(), m.values());
    EXPECT_EQ(back.label(), m.label());
}

TEST(MomentFile, RoundTripFloatIsBitExact)
{
    gen::Source src(81);
    std::vector<double> v{1.0};
    for (int i = 0; i < 20; ++i) v.push_back(src.real(-5, 5));
    const MomentSequence<double> m(v, "random");
    const auto text = io::encode_moments(m).dump();
    const auto back = io::moments_from_json<double>(io::parse_json(text, "text"), "text");
    EXPECT_EQ(back.values(), v);
}

TEST(MomentFile, LoadsFromDisk)
{
    const auto path = temp_file("m.json", R"({"label":"g","mode":"rational","moments":[1,0,1,0,3]})");
    const auto m = io::load_moments<Rational>(path, 0);
    EXPECT_EQ(m.values(), (std::vector<Rational>{1, 0, 1, 0, 3}));
    EXPECT_EQ(m.label(), "g");
    std::filesystem::remove(path);
}

TEST(MomentFile, Errors)
{
    EXPECT_THROW(io::parse_json("{\"moments\": [1,", "bad"), InputError);
    EXPECT_THROW(io::moments_from_json<Rational>(Json::parse(R"({"moments":[]})"), "d"), InputError);
    EXPECT_THROW(io::moments_from_json<Rational>(Json::parse(R"({"values":[1]})"), "d"), InputError);
    EXPECT_THROW(io::moments_from_json<Rational>(Json::parse(R"({"mode":"wide","moments":[1]})"), "d"), InputError);
    try {
        io::moments_from_json<Rational>(Json::parse(R"({"moments":[2,0,1]})"), "d");
        FAIL() << "no exception";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("moments not normalized"), std::string::npos);
    }
    EXPECT_THROW(io::load_moments<Rational>("/nonexistent/orthomat.json", 0), InputError);
}

TEST(RecurrenceFile, RoundTrip)
{
    gen::Source src(82);
    const auto rec = src.recurrence(12);
    const auto back = io::recurrence_from_json<Rational>(io::encode_recurrence(rec), "doc");
    EXPECT_EQ(back, rec);
    EXPECT_THROW(io::recurrence_from_json<Rational>(Json::parse(R"({"a2":[1,-1],"b":[0]})"), "d"), InputError);
}

TEST(Builtin, MomentFamilies)
{
    EXPECT_EQ(io::load_moments<Rational>("builtin:gaussian", 5).values(), (std::vector<Rational>{1, 0, 1, 0, 3}));
    EXPECT_EQ(io::load_moments<Rational>("builtin:uniform", 7).values(),
              catalog_moments<Rational>(Family::Uniform, 7).values());
    EXPECT_THROW(io::load_moments<Rational>("builtin:laguerre", 5), InputError);
    EXPECT_THROW(io::load_moments<Rational>("builtin:q-hermite", 5), InputError);
    EXPECT_THROW(io::load_moments<Rational>("builtin:uniform:1/2", 5), InputError);
}

TEST(Builtin, RecurrenceFamilies)
{
    const auto g = io::load_recurrence<Rational>("builtin:gaussian", 6);
    for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(g.a2(n), Rational(static_cast<long>(n)));
    const auto q = io::load_recurrence<Rational>("builtin:q-hermite:1/2", 6);
    EXPECT_EQ(q.a2(3), Rational(7, 4));
    // The builtin quadratic-weight recurrence reproduces its moments.
    const auto w = io::load_recurrence<Rational>("builtin:quadratic-weight", 10);
    EXPECT_EQ(moments_from_recurrence(w, 11).values(), catalog_moments<Rational>(Family::QuadraticWeight, 11).values());
    EXPECT_THROW(io::load_recurrence<Rational>("builtin:q-hermite:3/2", 6), InputError);
}

TEST(Encode, ScalarShapes)
{
    EXPECT_EQ(io::encode(-0.0).dump(), "0.0");
    EXPECT_EQ(io::encode(Rational(-3, 4)), Json("-3/4"));
    EXPECT_EQ(io::encode(Surd::sqrt(Rational(8))), Json("2*sqrt(2)"));
    EXPECT_TRUE(io::encode(Wide(1) / 3).is_string());
    TriangularTable<Rational> t(1, TableRole::Other);
    t.at(0, 0) = 1;
    t.at(1, 0) = Rational(1, 2);
    t.at(1, 1) = 2;
    EXPECT_EQ(io::encode(t).dump(), R"([["1"],["1/2","2"]])");
}

TEST(Csv, FlattensNestedDocuments)
{
    Json doc;
    doc["n"] = 2;
    doc["a"] = Json::array({"0", "1"});
    doc["L"] = Json::array({Json::array({1}), Json::array({0, 1})});
    doc["rn"]["omega"] = Json::array({1.5});
    const std::string csv = io::to_csv(doc);
    EXPECT_EQ(csv,
              "key,i,j,value\n"
              "n,,,2\n"
              "a,0,,0\n"
              "a,1,,1\n"
              "L,0,0,1\n"
              "L,1,0,0\n"
              "L,1,1,1\n"
              "rn.omega,0,,1.5\n");
}
