#include <gtest/gtest.h>

#include <filesystem>

#include "gfred/catalog.hpp"
#include "gfred/io.hpp"
#include "gfred/isomorphism.hpp"
#include "gfred/random.hpp"

using namespace gfred;
using io::Json;

namespace {

const std::filesystem::path kFixtures = GFRED_FIXTURE_DIR;

bool same_tables(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.unit_names() != b.unit_names() || a.num_arrows() != b.num_arrows()) return false;
  for (ArrowIndex x = 0; x < a.num_arrows(); ++x) {
    if (a.id(x) != b.id(x) || a.dom(x) != b.dom(x) || a.ran(x) != b.ran(x) || a.inverse(x) != b.inverse(x)) return false;
    for (ArrowIndex y = 0; y < a.num_arrows(); ++y)
      if (a.compose(x, y) != b.compose(x, y)) return false;
  }
  return true;
}

}  // namespace

TEST(GroupoidJson, RoundTrip) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const FiniteGroupoid g = random_groupoid(rng);
    const FiniteGroupoid back = io::groupoid_from_json(Json::parse(io::groupoid_to_json(g).dump()));
    EXPECT_TRUE(same_tables(g, back));
  }
}

TEST(GroupoidJson, InfersUnitsAndInverses) {
  const Json doc = Json::parse(R"({
    "units": ["a"],
    "arrows": [{"id": 0, "dom": "a", "ran": "a"}, {"id": 1, "dom": "a", "ran": "a"}],
    "compose": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]]
  })");
  const FiniteGroupoid g = io::groupoid_from_json(doc);
  EXPECT_TRUE(validate(g).ok());
  EXPECT_EQ(g.id(g.unit_arrow(0)), 0);
  EXPECT_EQ(g.id(g.inverse(*g.find_arrow(1))), 1);
  EXPECT_TRUE(isomorphic(g, group_groupoid(FiniteGroup::cyclic(2))));
}

TEST(GroupoidJson, RejectsBadDocuments) {
  EXPECT_THROW(io::groupoid_from_json(Json::parse(R"({"units": ["a", "a"], "arrows": []})")), InputError);
  EXPECT_THROW(io::groupoid_from_json(Json::parse(R"({"units": ["a"], "arrows": [{"id": 0, "dom": "b", "ran": "a"}]})")),
               InputError);
  EXPECT_THROW(io::groupoid_from_json(Json::parse(
                   R"({"units": ["a"], "arrows": [{"id": 0, "dom": "a", "ran": "a"}, {"id": 0, "dom": "a", "ran": "a"}]})")),
               InputError);
  EXPECT_THROW(io::groupoid_from_json(Json::parse(R"({"arrows": []})")), InputError);
  EXPECT_THROW(io::groupoid_from_json(Json::parse(R"({"units": ["a"], "arrows": [{"id": "x", "dom": "a", "ran": "a"}]})")),
               InputError);
}

TEST(Fixtures, Groupoids) {
  EXPECT_TRUE(isomorphic(io::load_groupoid(kFixtures / "pair3.json"), pair_groupoid({"1", "2", "3"})));
  EXPECT_TRUE(isomorphic(io::load_groupoid(kFixtures / "split.json"), catalog::split_example()));
  EXPECT_TRUE(isomorphic(io::load_groupoid(kFixtures / "swap.json"), catalog::swap_groupoid()));
  EXPECT_TRUE(validate(io::load_groupoid(kFixtures / "pair3_broken.json")).has("associativity"));
  EXPECT_THROW(io::load_groupoid(kFixtures / "malformed.json"), InputError);
  try {
    io::load_groupoid(kFixtures / "does_not_exist.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("does_not_exist.json"), std::string::npos);
  }
}

TEST(Fixtures, Covers) {
  const FiniteGroupoid g = io::load_groupoid(kFixtures / "split.json");
  const auto cover = io::load_cover(g, kFixtures / "split_cover.json");
  ASSERT_EQ(cover.size(), 2u);
  EXPECT_EQ(cover[1].names(g), (std::vector<std::string>{"3"}));
  EXPECT_THROW(io::cover_from_json(g, Json::parse(R"({"cover": [["9"]]})")), InputError);
}

TEST(Fixtures, Families) {
  EXPECT_TRUE(check_weak_gluing(io::load_family(kFixtures / "family_duplicate.json")).clean());
  EXPECT_TRUE(check_weak_gluing(io::load_family(kFixtures / "family_bmodel.json")).clean());
  EXPECT_FALSE(check_weak_gluing(io::load_family(kFixtures / "family_cocycle.json")).cocycle.empty());
  EXPECT_FALSE(check_weak_gluing(io::load_family(kFixtures / "family_overlap.json")).lifting.empty());
}

TEST(FamilyJson, RoundTrip) {
  const GluingFamily f = catalog::b_model_family();
  const GluingFamily back = io::family_from_json(Json::parse(io::family_to_json(f).dump()), ".");
  EXPECT_EQ(back.units, f.units);
  EXPECT_EQ(back.isos, f.isos);
  ASSERT_EQ(back.pieces.size(), f.pieces.size());
  for (std::size_t i = 0; i < f.pieces.size(); ++i) EXPECT_TRUE(same_tables(back.pieces[i], f.pieces[i]));
}

TEST(BandJson, FixtureAndRoundTrip) {
  const BandOperator a = io::load_band(kFixtures / "laplacian_limits.json");
  EXPECT_EQ(a.bandwidth(), 1);
  EXPECT_EQ(a.entry(-10, -10), Complex(-3.0));
  EXPECT_EQ(a.entry(10, 10), Complex(3.0));
  EXPECT_EQ(a.entry(0, 0), Complex(0.5));
  EXPECT_EQ(a.entry(1, 1), Complex(-7.0));
  EXPECT_EQ(a.entry(4, 5), Complex(1.0));

  Rng rng(8);
  const BandOperator b = random_band_operator(rng, 2);
  const BandOperator back = io::band_from_json(Json::parse(io::band_to_json(b).dump()));
  for (long i = -10; i <= 10; ++i)
    for (long j = i - 2; j <= i + 2; ++j) EXPECT_EQ(back.entry(i, j), b.entry(i, j));
}

TEST(BandJson, RejectsBadDiagonals) {
  EXPECT_THROW(io::band_from_json(Json::parse(R"({"bandwidth": 1, "diagonals": [{"offset": 2}]})")), InputError);
  EXPECT_THROW(io::band_from_json(Json::parse(R"({"bandwidth": 1, "diagonals": [{"offset": 0}, {"offset": 0}]})")),
               InputError);
  EXPECT_THROW(io::band_from_json(Json::parse(R"({"bandwidth": 1, "diagonals": [{"offset": 0, "limit_plus": "x"}]})")),
               InputError);
}

TEST(FunctionJson, RoundTrip) {
  Rng rng(4);
  const FiniteGroupoid g = catalog::split_example();
  const ArrowFunction f = random_function(g, rng);
  const ArrowFunction back = io::function_from_json(g, Json::parse(io::function_to_json(f).dump()));
  EXPECT_EQ((back.values() - f.values()).norm(), 0.0);
  EXPECT_THROW(io::function_from_json(g, Json::parse("[[999, 1, 0]]")), InputError);
}
