#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "dqm/dqm.hpp"

using namespace dqm;

TEST(ParseComplex, AcceptedForms) {
    EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0));
    EXPECT_EQ(parse_complex("0.2+0.4i"), cplx(0.2, 0.4));
    EXPECT_EQ(parse_complex("0.2-0.4i"), cplx(0.2, -0.4));
    EXPECT_EQ(parse_complex("-1e-3+2e-2i"), cplx(-1e-3, 2e-2));
    EXPECT_EQ(parse_complex("1.5e+1-i"), cplx(15, -1));
    EXPECT_EQ(parse_complex("3i"), cplx(0, 3));
    EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
    EXPECT_EQ(parse_complex(" 0.3 + 0.1j "), cplx(0.3, 0.1));
}

TEST(ParseComplex, Rejects) {
    for (const char* bad : {"", "abc", "0.3+", "1+2", "0.3+0.1k", "1..2"})
        EXPECT_THROW(parse_complex(bad), ValidationError) << bad;
}

TEST(ParseComplex, FormatRoundTrip) {
    for (cplx v : {cplx(0.1, 0), cplx(0.2, -0.4), cplx(-1e-7, 3.3), cplx(1.0 / 3, 2.0 / 7)})
        EXPECT_EQ(parse_complex(format_complex(v)), v);
}

TEST(Fixtures, EveryFamilyHasValidDefault) {
    auto fs = FixtureStore::load_default();
    for (auto id : kAllFamilies) {
        auto names = fs.names(id);
        EXPECT_NE(std::find(names.begin(), names.end(), "default"), names.end()) << to_string(id);
        for (const auto& n : names) EXPECT_NO_THROW(validate_params(id, fs.get(id, n))) << to_string(id) << "/" << n;
    }
    EXPECT_THROW(fs.get(FamilyId::ContinuousQHermite, "missing"), ValidationError);
}

TEST(Fixtures, ParamsJsonRoundTrip) {
    auto fs = FixtureStore::load_default();
    for (auto id : kAllFamilies)
        for (const auto& n : fs.names(id)) {
            auto p = fs.get(id, n);
            auto back = params_from_json(id, params_to_json(id, p));
            EXPECT_EQ(back.lambda, p.lambda);
            EXPECT_EQ(back.q, p.q);
            EXPECT_EQ(back.phi, p.phi);
        }
}

TEST(Fixtures, BadFilesAreReported) {
    EXPECT_THROW(FixtureStore::load("/nonexistent/fixtures.json"), ValidationError);
    std::string path = ::testing::TempDir() + "dqm_bad_fixtures.json";
    {
        std::ofstream(path) << "{ \"version\": 1, \"families\": { \"hermite\": {} } }";
    }
    EXPECT_THROW(FixtureStore::load(path), ValidationError);
    {
        std::ofstream(path) << "{ not json";
    }
    EXPECT_THROW(FixtureStore::load(path), ValidationError);
    {
        std::ofstream(path) << "{ \"version\": 2, \"families\": {} }";
    }
    EXPECT_THROW(FixtureStore::load(path), ValidationError);
    std::remove(path.c_str());
}
